// SPDX-License-Identifier: Apache-2.0
#include "cubic/testfunc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cubic/gauss.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double smooth_step(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / v - 1.0 / (1.0 - v)));
}

// libm's j0/j1 are about eight times faster than the generic Boost routines
// and agree with them to rounding level (checked in the unit tests).
double j0(double x) { return ::j0(x); }
double j1(double x) { return ::j1(x); }

// int_a^b Phi(u) J0(rho sqrt u) du after u = s^2, by composite 20-point
// Gauss-Legendre with panels two J0 oscillations wide. The
// transitions are C-infinity, so the fixed rule converges to rounding level.
double bridge_integral(double a, double b, double rho) {
  using boost::math::quadrature::gauss;
  const double sa = std::sqrt(a), sb = std::sqrt(b);
  const int panels = std::max(8, static_cast<int>(std::ceil((sb - sa) * rho / (4.0 * M_PI))));
  NeumaierSum total;
  for (int i = 0; i < panels; ++i) {
    const double lo = sa + (sb - sa) * i / panels, hi = sa + (sb - sa) * (i + 1) / panels;
    total.add(gauss<double, 20>::integrate(
        [rho](double s) { return 2.0 * s * SmoothWindow::phi(s * s) * j0(rho * s); }, lo, hi));
  }
  return total.value();
}

// Four-point Lagrange cubic on 0.01-spaced nodes i-1 .. i+2.
double interpolate(const std::vector<double>& v, double t) {
  const double h = 0.01;
  std::size_t i = static_cast<std::size_t>(t / h);
  i = std::clamp<std::size_t>(i, 1, v.size() - 3);
  const double x = t / h - static_cast<double>(i);
  const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1], y3 = v[i + 2];
  return -y0 * x * (x - 1.0) * (x - 2.0) / 6.0 + y1 * (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0 -
         y2 * (x + 1.0) * x * (x - 2.0) / 2.0 + y3 * (x + 1.0) * x * (x - 1.0) / 6.0;
}

}  // namespace

double fejer(double t) {
  if (t == 0.0) return 1.0;
  const double x = M_PI * t;
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0;
  const double s = std::sin(x) / x;
  return s * s;
}

double fejer_hat(double xi) { return std::max(1.0 - std::abs(xi), 0.0); }

TestFunctionPair fejer_pair() { return {fejer, fejer_hat, 1.0, 1.0, 1.0, 1.0 / (2.0 * M_PI * M_PI)}; }

double SmoothWindow::phi(double u) {
  if (u <= 0.5 || u >= 2.5) return 0.0;
  if (u >= 1.0 && u <= 2.0) return 1.0;
  if (u < 1.0) return smooth_step(2.0 * (u - 0.5));
  return smooth_step(2.0 * (2.5 - u));
}

double SmoothWindow::phi_hat0() { return 2.0 * M_PI / kSqrt3 * phi_integral(); }

double SmoothWindow::phi_hat(double t) const {
  t = std::abs(t);
  if (t == 0.0) return phi_hat0();
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
  }
  const double rho = 8.0 * M_PI * t / kSqrt3;
  // Flat part: int_1^2 J0(rho sqrt u) du = (2 / rho) (sqrt2 J1(rho sqrt2) - J1(rho)).
  const double flat = 2.0 / rho * (std::sqrt(2.0) * j1(rho * std::sqrt(2.0)) - j1(rho));
  const double v = 2.0 * M_PI / kSqrt3 * (flat + bridge_integral(0.5, 1.0, rho) + bridge_integral(2.0, 2.5, rho));
  std::lock_guard lock(mu_);
  memo_.emplace(t, v);
  return v;
}

const SmoothWindow::Grid& SmoothWindow::grid() const {
  std::call_once(grid_once_, [this] {
    auto g = std::make_unique<Grid>();
    const std::size_t n = static_cast<std::size_t>(std::lround(grid_max() / 0.01)) + 1;
    g->values = parallel_map(n, default_threads(), [this](std::size_t i) { return phi_hat(0.01 * static_cast<double>(i)); });
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, grid_max());
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double t = u(rng);
      worst = std::max(worst, std::abs(interpolate(g->values, t) - phi_hat(t)));
    }
    g->error_bound = worst;
    grid_ = std::move(g);
  });
  return *grid_;
}

double SmoothWindow::phi_hat_interp(double t) const {
  t = std::abs(t);
  if (t > grid_max() - 0.02) return phi_hat(t);
  return interpolate(grid().values, t);
}

double SmoothWindow::interpolation_error_bound() const { return grid().error_bound; }

const std::vector<std::pair<int, double>>& SmoothWindow::decay_constants() const {
  std::call_once(decay_once_, [this] {
    const int ks[] = {2, 4, 8};
    double c[3] = {0, 0, 0};
    for (double t = 1.0; t <= 100.0 + 1e-9; t += 0.05) {
      const double v = std::abs(phi_hat(t));
      for (int j = 0; j < 3; ++j) c[j] = std::max(c[j], v * std::pow(t, ks[j]));
    }
    // Margin for values between sample points.
    for (int j = 0; j < 3; ++j) decay_.emplace_back(ks[j], 1.5 * c[j]);
  });
  return decay_;
}

const SmoothWindow& default_window() {
  static const SmoothWindow w;
  return w;
}

PoissonResult poisson_check(const EisensteinInt& q, const EisensteinInt& r, double M, const SmoothWindow& window) {
  if (q.is_zero()) throw DomainError("poisson_check: q must be nonzero");
  if (!(M > 0.0)) throw DomainError("poisson_check: M must be positive");
  PoissonResult out;
  const double Nq = static_cast<double>(norm(q));

  NeumaierSum lhs;
  const auto m_max = static_cast<std::int64_t>(std::floor(2.5 * M));
  std::vector<EisensteinInt> ms;
  for_each_lattice_point(m_max, 1, 0, 1, 0, [&](const EisensteinInt& m) {
    if (divides(q, m - r)) ms.push_back(m);
  });
  std::sort(ms.begin(), ms.end(), CanonicalLess{});
  for (const auto& m : ms) {
    const double v = SmoothWindow::phi(static_cast<double>(norm(m)) / M);
    if (v != 0.0) {
      lhs.add(v);
      ++out.lhs_terms;
    }
  }
  out.lhs = lhs.value();

  // Tail of the dual sum beyond argument T: the lattice has (2 pi / sqrt 3) X
  // points of norm <= X, so with |Phi^(t)| <= C t^-K the tail is about
  // (16 pi / sqrt 3) C T^(2-K) / (K - 2); doubled for lattice-count slack.
  const double target = 1e-8;
  double T = 0.0;
  for (const auto& [K, C] : window.decay_constants()) {
    if (K <= 2) continue;
    const double scale = 2.0 * 16.0 * M_PI / kSqrt3 * C / (K - 2);
    const double t = std::pow(scale / target, 1.0 / (K - 2));
    if (T == 0.0 || t < T) {
      T = t;
      out.tail_bound = scale * std::pow(std::max(t, 1.0), 2.0 - K);
    }
  }
  T = std::max(T, 1.0);
  const auto k_max = static_cast<std::int64_t>(std::ceil(4.0 * Nq * T * T / M));
  // Dual points grouped by norm so each distinct argument of Phi^ is evaluated once.
  std::vector<std::pair<std::int64_t, EisensteinInt>> ks;
  for_each_lattice_point(k_max, 1, 0, 1, 0, [&](const EisensteinInt& k) { ks.emplace_back(norm(k), k); });
  std::sort(ks.begin(), ks.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : canonical_less(x.second, y.second);
  });
  const EisensteinInt den = q * kSqrtMinus3;
  NeumaierSum rhs;
  for (std::size_t i = 0; i < ks.size();) {
    const std::int64_t n = ks[i].first;
    NeumaierSum phase;
    for (; i < ks.size() && ks[i].first == n; ++i) {
      phase.add(e_tr(-(ks[i].second * r), den).real());
      ++out.rhs_terms;
    }
    rhs.add(window.phi_hat(0.5 * std::sqrt(M * static_cast<double>(n) / Nq)) * phase.value());
  }
  out.rhs = M / Nq * rhs.value();
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace cubic
