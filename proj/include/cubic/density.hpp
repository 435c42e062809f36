// SPDX-License-Identifier: Apache-2.0
//
// Family sums twisted by chi_f(ell): the weighted count S(X; ell), the twisted
// one-level density D^T(X; ell) through located zeros or through the explicit
// formula, and the constant C_{3,h}.
#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "cubic/characters.hpp"
#include "cubic/testfunc.hpp"

namespace cubic {

/// How ell twists the family. Units and powers of lambda = 1 - w act trivially
/// (chi_f(w) = chi_f(lambda) = 1 on the family), so only the primary part counts.
enum class EllClass { Cube, PrimeTimesCube, Other };

struct EllShape {
  EllClass kind = EllClass::Other;
  /// The prime q when kind is PrimeTimesCube, with its exponent mod 3 (1 or 2).
  EisensteinInt q{0, 0};
  int q_exponent = 0;
  /// prod over primes p | ell coprime to 3 of (1 + 1/N(p))^-1.
  double euler_factor = 1.0;
};
EllShape classify_ell(const EisensteinInt& ell);
std::string to_string(EllClass c);

struct TwistedCount {
  std::complex<double> computed;
  /// Cube case: X Phi^(0) / (81 zeta_K(2)) prod (1 + 1/N(p))^-1. Otherwise the
  /// non-cube bound X^(1/2) N(ell)^(1/4).
  double main_term = 0.0;
  EllClass kind = EllClass::Other;
  double relative_gap = 0.0;  // |computed / main - 1| for cubes, |computed| / main otherwise
  std::int64_t family_count = 0;
};

/// S = sum_{f} chi_f(ell) Phi(N(f) / X) over the whole family. Requires
/// N(ell)^(1/4) <= sqrt(X) and ell != 0.
TwistedCount twisted_count(double X, const EisensteinInt& ell, int threads);

struct C3h {
  double value = 0.0;
  /// Number of prime powers q coprime to 3 with N(q) <= e^(L/3), all of which enter the sum.
  std::size_t terms = 0;
};

/// sum over prime powers q = p^j coprime to 3 of
/// log N(p) / N(q)^(3/2) (1 + 1/N(p))^-1 h^(3 log N(q) / L). Requires L >= 1.
C3h c3h(const TestFunctionPair& pair, double L);

enum class DensityRoute { Zeros, PrimeSums };
std::string to_string(DensityRoute r);

struct DensityReport {
  double X = 0.0;
  double L = 0.0;
  EisensteinInt ell{1, 0};
  DensityRoute route = DensityRoute::PrimeSums;
  double computed = 0.0;       // real part of D^T
  double computed_imag = 0.0;  // zero when ell is a cube
  /// Cube case: (X Phi^(0) / 81 L) zeta_K(2)^-1 prod (1 + 1/N(p))^-1 (h^(0) log X + C_{3,h}).
  /// Prime times cube: the q-damped bound. Otherwise the error-term size
  /// X^(14/27) e^(11L/27) N(ell)^(14/27) / L.
  double main_term = 0.0;
  double c3h = 0.0;
  double relative_gap = 0.0;
  /// e^(11L) N(ell)^14 <= X^13.
  bool hypothesis_met = false;
  EllClass ell_class = EllClass::Cube;
  std::int64_t family_count = 0;
  /// Sum of Phi(N(f)/X) over the family, the natural scale for aggregate differences.
  double weight_sum = 0.0;
  /// Zeros route: height of the scans and whether every scan was certified.
  double T = 0.0;
  bool certified = true;
};

/// D^T(X; ell, h, Phi) = sum_f sum_gamma h(gamma L / 2pi) chi_f(ell) Phi(N(f)/X).
/// Zeros: located zeros with |gamma| <= T plus the smooth archimedean tail; needs X <= 1e4.
/// PrimeSums: S_1 - S_2 with S_1 the archimedean sweep and S_2 the prime-power
/// sweep of chi_f(ell n) + chi_f(ell n^2); needs e^L <= X^(13/11) and e^L <= 2e4.
/// T = 0 picks 40 for the Zeros route.
DensityReport one_level_density(double X, double L, const EisensteinInt& ell, DensityRoute route,
                                const TestFunctionPair& pair, int threads, double T = 0.0);

/// Per-conductor sum over zeros of h(gamma L / 2pi) through the explicit formula,
/// without locating zeros: archimedean term minus prime term. Requires e^L <= 2e4.
double zero_sum_surrogate(const FamilyMember& f, const TestFunctionPair& pair, double L);

}  // namespace cubic
