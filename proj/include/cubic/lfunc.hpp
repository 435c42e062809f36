// SPDX-License-Identifier: Apache-2.0
//
// L(s, chi_f) for family conductors: ideal coefficients, the completed
// function Lambda(s) = Q^s Gamma(s) L(s) with Q = sqrt(3 N(f)) / (2 pi),
// central values, zeros on the critical line and the explicit formula.
//
// Lambda is evaluated two ways:
//  * the smoothed approximate functional equation, split at tau = e^{i phi}:
//      Lambda(s) = sum_m c_m (Q/m)^s Gamma(s, m tau / Q)
//                + eps sum_m conj(c_m) (Q/m)^{1-s} Gamma(1-s, m / (tau Q));
//  * the theta integral along the same rays, theta(y) = sum_m c_m e^{-m y / Q},
//    which evaluates many s at once and drives the zero scan.
// The rotation phi = sign(t) max(0, pi/2 - c/|t|) keeps the terms within a
// factor e^c of |Lambda| high on the critical line.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cubic/characters.hpp"
#include "cubic/gauss.hpp"
#include "cubic/testfunc.hpp"

namespace cubic {

using cplx = std::complex<double>;

/// Rotation constant c in phi(t) = pi/2 - c/|t|.
inline constexpr double kRotation = 10.0;

/// Split angle for height t.
double rotation_angle(double t);

struct LFunctionData {
  FamilyMember conductor;
  /// c[m] = sum over ideals of norm m of chi_f(ideal), m = 0..cutoff (c[0] unused).
  std::vector<cplx> coefficients;
  cplx root_number;
  std::int64_t cutoff = 0;
  /// Q = sqrt(3 N(f)) / (2 pi).
  double Q = 0.0;
};

/// Default cutoff ceil(8 sqrt(3 N(f))), enough near the real axis.
std::int64_t default_cutoff(std::int64_t norm);
/// Cutoff for evaluations with |Im s| <= T: ceil(40 Q / cos phi(T)), at least the default.
std::int64_t cutoff_for_height(std::int64_t norm, double T);

/// Coefficients of L(s, chi_f) up to `cutoff`. Every ideal is lambda^k (n) with n
/// primary and lambda = 1 - w; chi_f(lambda) = (lambda / f)_3 is nonzero because
/// f is coprime to 3. Ideals sharing a prime with f contribute 0.
LFunctionData dirichlet_coefficients(const FamilyMember& f, std::int64_t cutoff, GaussSumCache* cache = nullptr);

/// Lambda(s) by the approximate functional equation with split tau = e^{i phi}
/// scaled by `split_scale` (1 by default). Throws DomainError if the neglected
/// coefficients could contribute more than 1e-8 in units of |Q^s Gamma(s)|.
cplx lambda_value(const LFunctionData& data, cplx s, double split_scale = 1.0);

/// |Q^s Gamma(s)|, the factor separating Lambda from L.
double gamma_factor_abs(const LFunctionData& data, cplx s);

/// |Lambda(s) - eps conj(Lambda(1 - conj s))| / |Q^s Gamma(s)| with the two
/// sides evaluated at different split points, so the identity is a genuine
/// test of the coefficients and of eps rather than of the formula's symmetry.
double fe_residual(const LFunctionData& data, cplx s);

/// Lambda at many points by the theta integral along the ray of angle phi.
std::vector<cplx> lambda_theta(const LFunctionData& data, double phi, const std::vector<cplx>& s);

struct CentralValue {
  cplx L;            // L(1/2, chi_f)
  cplx L_theta;      // the same through the theta integral
  double fe_residual = 0.0;
  bool vanishing = false;  // |L| < 1e-8
};
CentralValue central_value(const FamilyMember& f, GaussSumCache* cache = nullptr);
CentralValue central_value(const LFunctionData& data);

/// Z(t) = eps^{-1/2} Lambda(1/2 + it) / |Q^{1/2+it} Gamma(1/2+it)|: real, with |Z| = |L(1/2+it)|.
double hardy_z(const LFunctionData& data, double t);

struct ZeroList {
  FamilyMember conductor;
  std::vector<double> ordinates;  // sorted, |gamma| <= T_max
  double T_max = 0.0;
  bool certified = false;
  /// Zeros with |gamma| < T_max predicted by the argument principle.
  long argument_count = 0;
  /// Grid spacing of the final scan.
  double spacing = 0.05;
};

/// Sign-change scan of Z on [-T, T] with spacing 0.05 and bisection to 1e-9.
/// The list is certified when the number of sign changes equals the
/// argument-principle count; otherwise the scan is repeated on finer grids
/// and, failing that, returned uncertified. Requires T <= 100 and a cutoff of
/// at least cutoff_for_height(N(f), T).
ZeroList find_zeros(const LFunctionData& data, double T);

/// Number of zeros with |gamma| < T by the argument principle: arg L(1/2 +- iT) is
/// continued from sigma = 3, the gamma factor supplies the rest and the
/// functional equation covers the left half strip. Returns -1 when the total
/// is not within 0.2 of an integer.
long zero_count(const LFunctionData& data, double T);

/// The archimedean density of zeros at height t:
/// (1/2pi) (log(3 N(f) / 4 pi^2) + 2 Re psi(1/2 + it)).
double zero_density(std::int64_t norm, double t);

/// (1/2pi) int_{|t| > T} h(tL/2pi) (log(3N/4pi^2) + 2 Re psi(1/2+it)) dt; T = 0 gives the full term.
double archimedean_term(std::int64_t norm, const TestFunctionPair& pair, double L, double T = 0.0);

/// (1/L) sum over prime-power ideals n with N(n) <= e^L of
/// Lambda_K(n) / sqrt(N(n)) (chi_f(n) + conj chi_f(n)) h^(log N(n) / L).
double prime_term(const FamilyMember& f, const TestFunctionPair& pair, double L);

struct ExplicitFormulaResult {
  double zero_side = 0.0;   // located zeros plus the smooth tail beyond T
  double located = 0.0;     // located zeros only
  double smooth_tail = 0.0;
  double tail_bound = 0.0;  // estimate of the oscillating remainder of the tail
  double archimedean = 0.0;
  double primes = 0.0;
  double prime_side = 0.0;  // archimedean - primes
  double residual = 0.0;
  std::size_t zero_count = 0;
  bool certified = false;
};

/// Estimate of |sum_{|gamma| > T} h(gamma L / 2pi) - smooth tail| from integrating by
/// parts against S(t) with |S(t)| taken as 1 + log(Q (|t| + 3)). A heuristic size, not a proof.
double zero_tail_bound(std::int64_t norm, double L, double T);

/// Both sides of the explicit formula for one conductor with the zeros up to T.
ExplicitFormulaResult explicit_formula_check(const FamilyMember& f, const TestFunctionPair& pair, double L, double T,
                                             GaussSumCache* cache = nullptr);

/// log |L(1/2, chi_f)| - Re P(chi_f; x). Throws DomainError when L(1/2) vanishes numerically.
double prop1_residual(const FamilyMember& f, double x, GaussSumCache* cache = nullptr);

}  // namespace cubic
