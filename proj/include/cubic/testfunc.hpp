// SPDX-License-Identifier: Apache-2.0
//
// Test functions: the Fejer pair (h, h^) and the smooth window Phi with its
// transform Phi^(t) = int int Phi(N(x + w y)) e(-t y) dx dy, plus an
// executable Poisson summation identity over residue classes of Z[w].
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

/// (sin(pi t) / (pi t))^2 with h(0) = 1.
double fejer(double t);
/// max(1 - |xi|, 0).
double fejer_hat(double xi);

struct TestFunctionPair {
  std::function<double(double)> h;
  std::function<double(double)> h_hat;
  double support_radius = 1.0;
  /// h(t) <= decay_constant / (1 + t^2) for all real t.
  double decay_constant = 1.0;
  /// integral of h over R (equals h_hat(0) for a Fourier pair).
  double h_integral = 1.0;
  /// m with h(u) averaging m / u^2 over an oscillation for large u.
  double tail_mean = 0.0;
};

TestFunctionPair fejer_pair();

/// The fixed smooth window: 0 outside [1/2, 5/2], 1 on [1, 2], with C-infinity
/// transitions S((u - 1/2) / (1/2)) and S((5/2 - u) / (1/2)), where
/// S(v) = e^{-1/v} / (e^{-1/v} + e^{-1/(1-v)}).
class SmoothWindow {
 public:
  SmoothWindow() = default;

  static double phi(double u);
  /// Exact integral of Phi over R (3/2 by the symmetry S(v) + S(1 - v) = 1).
  static double phi_integral() { return 1.5; }
  /// Phi^(0) = (2 pi / sqrt 3) * int Phi.
  static double phi_hat0();

  /// Phi^(t) by the radial reduction
  ///   Phi^(t) = (2 pi / sqrt 3) int_{1/2}^{5/2} Phi(u) J0(rho sqrt u) du,  rho = 8 pi t / sqrt 3,
  /// with the flat part in closed form and the transitions by composite
  /// Gauss-Legendre quadrature. Memoised per argument; thread-safe.
  double phi_hat(double t) const;

  /// Cubic interpolation on a 0.01-spaced grid over [0, grid_max()], built on
  /// first use; falls back to phi_hat() beyond the grid.
  double phi_hat_interp(double t) const;
  double grid_max() const { return 25.0; }
  /// Largest |interp - exact| seen at the verification points when the grid was built.
  double interpolation_error_bound() const;

  /// Measured constants C_K with |Phi^(t)| <= C_K t^{-K} on t >= 1, K in {2, 4, 8}.
  const std::vector<std::pair<int, double>>& decay_constants() const;

 private:
  struct Grid {
    std::vector<double> values;
    double error_bound = 0.0;
  };
  const Grid& grid() const;

  mutable std::mutex mu_;
  mutable std::map<double, double> memo_;
  mutable std::once_flag grid_once_, decay_once_;
  mutable std::unique_ptr<Grid> grid_;
  mutable std::vector<std::pair<int, double>> decay_;
};

/// Shared process-wide window instance (memo tables are shared too).
const SmoothWindow& default_window();

struct PoissonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::int64_t lhs_terms = 0;
  std::int64_t rhs_terms = 0;
  double tail_bound = 0.0;
};

/// lhs = sum_{m = r mod q} Phi(N(m) / M)
/// rhs = (M / N(q)) sum_{k in Z[w]} Phi^( (1/2) sqrt(M N(k) / N(q)) ) e(-k r / (q sqrt(-3)))
/// with the dual sum truncated once the measured decay bound puts the tail below 1e-8.
PoissonResult poisson_check(const EisensteinInt& q, const EisensteinInt& r, double M,
                            const SmoothWindow& window = default_window());

}  // namespace cubic
