// SPDX-License-Identifier: Apache-2.0
//
// The trace exponential e(z) = exp(2 pi i (z + conj z)), generalised cubic
// Gauss sums g(k, n) = sum_{r mod n} chi_n(r) e(k r / n), and root numbers.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

struct GaussSumValue {
  std::complex<double> value;
  std::int64_t modulus_norm = 1;
  /// True when the value is zero for a structural reason (a vanishing case of
  /// the prime-power evaluation), never set from a numerical comparison.
  bool exact_zero = false;
};

/// Tr(num/den) reduced to [0, N(den)) as an exact numerator over N(den).
std::pair<std::int64_t, std::int64_t> trace_fraction(const EisensteinInt& num, const EisensteinInt& den);

/// e(num/den), with the rational trace reduced mod 1 before exponentiating.
std::complex<double> e_tr(const EisensteinInt& num, const EisensteinInt& den);

/// exp(2 pi i t / N) for integer t, reduced exactly.
std::complex<double> unit_root(std::int64_t t, std::int64_t N);

/// A complete residue system mod n: x + y w with 0 <= x < A, 0 <= y < C,
/// where (A, 0), (B, C) is the Hermite basis of the lattice n Z[w] and A C = N(n).
class ResidueSystem {
 public:
  explicit ResidueSystem(const EisensteinInt& n);

  std::int64_t size() const { return A_ * C_; }
  std::int64_t A() const { return A_; }
  std::int64_t C() const { return C_; }
  /// i-th representative, i in [0, size()), y-major order.
  EisensteinInt operator[](std::int64_t i) const { return {i % A_, i / A_}; }

 private:
  std::int64_t A_ = 1, C_ = 1;
};

/// Literal O(N(n)) evaluation with precomputed character values, reusable
/// across many twists k for one modulus.
class GaussBruteForce {
 public:
  /// n must be primary and coprime to 3.
  explicit GaussBruteForce(const EisensteinInt& n, const PrimeTable* table = nullptr);
  GaussSumValue operator()(const EisensteinInt& k) const;
  const EisensteinInt& modulus() const { return n_; }

 private:
  EisensteinInt n_;
  std::int64_t N_;
  ResidueSystem residues_;
  std::vector<std::uint8_t> exps_;  // packed chi_n(r)
  std::vector<double> root_re_, root_im_;
  mutable std::vector<std::int32_t> scratch_;
};

GaussSumValue gauss_bruteforce(const EisensteinInt& k, const EisensteinInt& n, const PrimeTable* table = nullptr);

/// Literal evaluation of g(k, p^alpha) for a primary prime p and alpha >= 1, sized for
/// moduli far beyond brute force. Writing r = c + p j with c mod p and j mod p^(alpha-1)
/// gives chi(r) = chi_p(c)^alpha and e(kr/p^alpha) = e(kc/p^alpha) e(kj/p^(alpha-1)), so
/// g = [sum_c chi_p(c)^alpha e(kc/p^alpha)] [sum_j e(kj/p^(alpha-1))], and the second
/// sum runs over the Hermite grid x + y w where it splits into two one-dimensional
/// sums. Every term is summed numerically.
GaussSumValue gauss_prime_power_split(const EisensteinInt& k, const EisensteinInt& p, int alpha);

/// Thread-safe memo of g(1, p) for primes p; values never depend on whether
/// an entry was already cached.
class GaussSumCache {
 public:
  std::complex<double> prime_sum(const EisensteinPrime& p);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::complex<double>> prime_;
};

/// g(k, n) from the factorisation of n: prime-power evaluation plus twisted
/// multiplicativity, so only g(1, p) for primes p is ever summed directly.
GaussSumValue gauss_factored(const EisensteinInt& k, const EisensteinInt& n, GaussSumCache* cache = nullptr,
                             const PrimeTable* table = nullptr);

/// eps(chi_f) = chi_f(1 + 2w) g(1, f) / sqrt(N(f)).
std::complex<double> root_number(const FamilyMember& f, GaussSumCache* cache = nullptr);

}  // namespace cubic
