// SPDX-License-Identifier: Apache-2.0
//
// The weighted prime sum P(chi_f; x) = sum_{N(p) <= x} chi_f(p) w(p) / sqrt(N(p)),
// its multinomial expansion, and family moments against their main terms.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

/// w(p) = N(p)^(-1/log x) log(x / N(p)) / log x for N(p) < x, else 0. Throws for x < 3.
double weight(const EisensteinPrime& p, double x);
/// Same weight as a function of the norm alone.
double weight_of_norm(double norm, double x);

/// The length X^((13/22) / log log log X); X must exceed e^e so the inner log is positive.
double preset_length(double X);

/// P(chi_f; x) for one x, with the primes, weights and reciprocity tables
/// built once. Thread-safe; values are cached per conductor.
class WeightedPrimeSum {
 public:
  explicit WeightedPrimeSum(double x);

  double x() const { return x_; }
  const std::vector<EisensteinPrime>& primes() const { return table_.primes(); }
  /// w(p_i) for every prime with N(p_i) <= x.
  const std::vector<double>& weights() const { return w_; }
  /// w(p_i) / sqrt(N(p_i)).
  const std::vector<double>& coefficients() const { return c_; }

  /// P(chi_f; x). f must be primary.
  std::complex<double> operator()(const EisensteinInt& f) const;
  /// Same as operator() but memoised per conductor.
  std::complex<double> cached(const EisensteinInt& f) const;
  /// sum of w(p) / sqrt(N(p)), the value for the all-ones character and a bound on |P|.
  double trivial_value() const;
  /// chi_f(p_i) packed exponents, as used internally.
  void character_values(const EisensteinInt& f, std::vector<std::uint8_t>& out) const { table_.chi_all(f, out); }

 private:
  double x_;
  ReciprocityTable table_;
  std::vector<double> w_, c_;
  mutable std::mutex mu_;
  mutable std::map<EisensteinInt, std::complex<double>, CanonicalLess> cache_;
};

/// P(chi_f; x) with a throwaway WeightedPrimeSum; prefer the class in loops.
std::complex<double> evaluate_P(const FamilyMember& f, double x);

/// a_k(n) = k! / (alpha_1! ... alpha_r!) when n = prod p_i^alpha_i with distinct
/// primary primes of norm <= x and sum alpha_i = k; 0 otherwise (including any
/// unit other than 1 or the ramified prime in n).
std::uint64_t a_coefficient(int k, const EisensteinInt& n, double x, const PrimeTable* table = nullptr);

/// |P^k - sum_n a_k(n) chi_f(n) W(n) / sqrt(N(n))| with W(n) = prod w(p_i)^alpha_i,
/// the sum running over all n built from k primes of norm <= x.
/// Requires 0 <= k <= 4 and x <= 200.
double expansion_check(const FamilyMember& f, double x, int k);

/// zeta_K(2) = zeta(2) L(2, chi_-3) for K = Q(w), series truncation error below 1e-12.
double zeta_K2();

/// sum_{N(p) <= x} w(p)^2 / (N(p) + 1).
double mertens_sum(double x);

/// One family member in a window sweep: conductor data, Phi(N(f)/X) and P(chi_f; x).
struct PSample {
  EisensteinInt conductor;
  std::int64_t norm = 0;
  double phi = 0.0;
  std::complex<double> P;
};

/// Every family conductor with Phi(N(f)/X) > 0, in canonical order, with P evaluated.
std::vector<PSample> sweep_P(double X, double x, int threads);

/// Optional per-conductor factor for zero-weighted moments (the explicit-formula
/// value of the zero sum, supplied by the density module).
struct ZeroSumWeight {
  std::function<double(const FamilyMember&)> value;
  double L = 1.0;
  double h_hat0 = 1.0;
};

struct MomentReport {
  double X = 0.0;
  double x = 0.0;
  int k = 0;
  int j = 0;
  std::complex<double> computed;
  double main_term = 0.0;
  double relative_gap = 0.0;
  std::int64_t family_count = 0;
};

/// sum_f P^k conj(P)^j Phi(N(f)/X) (times the zero-sum weight when given),
/// with main term k! X Phi^(0) / (81 zeta_K(2)) (log log X)^k when k = j, else 0.
/// Requires 0 <= k, j <= 3 and X <= 1e7.
MomentReport moment_sum(double X, int k, int j, double x, int threads,
                        const std::optional<ZeroSumWeight>& zero_sum = std::nullopt);
/// The same reduction over an existing sweep.
MomentReport moment_from_samples(const std::vector<PSample>& samples, double X, int k, int j, double x);

/// Real-part moments over a sweep: re[k] = sum (Re P)^k Phi and abs[k] = sum |P|^k Phi, k = 0..kmax.
struct RealMoments {
  std::vector<double> re, abs;
};
RealMoments real_moments(const std::vector<PSample>& samples, int kmax);

}  // namespace cubic
