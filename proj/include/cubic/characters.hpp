// SPDX-License-Identifier: Apache-2.0
//
// Cubic residue symbols over Z[w], the cubic characters they generate, and
// the family of square-free conductors f = 1 (mod 9).
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

/// A value of a cubic character: w^e for e in {0,1,2}, or zero.
class CubicSymbolValue {
 public:
  constexpr CubicSymbolValue() = default;
  static constexpr CubicSymbolValue zero() { return CubicSymbolValue(kZeroTag); }
  static constexpr CubicSymbolValue omega_pow(int e) { return CubicSymbolValue(static_cast<std::int8_t>(((e % 3) + 3) % 3)); }

  constexpr bool is_zero() const { return tag_ == kZeroTag; }
  /// Exponent of w; only meaningful when !is_zero().
  constexpr int exponent() const { return tag_; }
  /// 0,1,2 for w^e and 3 for zero; the packed form used by the numeric kernels.
  constexpr std::uint8_t packed() const { return is_zero() ? 3 : static_cast<std::uint8_t>(tag_); }

  constexpr CubicSymbolValue conj() const { return is_zero() ? *this : omega_pow(3 - tag_); }
  constexpr CubicSymbolValue pow(int k) const {
    if (is_zero()) return k == 0 ? omega_pow(0) : *this;
    return omega_pow(tag_ * (k % 3));
  }
  std::complex<double> to_complex() const;

  friend constexpr CubicSymbolValue operator*(CubicSymbolValue x, CubicSymbolValue y) {
    if (x.is_zero() || y.is_zero()) return zero();
    return omega_pow(x.tag_ + y.tag_);
  }
  friend constexpr bool operator==(CubicSymbolValue, CubicSymbolValue) = default;

 private:
  static constexpr std::int8_t kZeroTag = -1;
  constexpr explicit CubicSymbolValue(std::int8_t t) : tag_(t) {}
  std::int8_t tag_ = 0;
};

/// w^e as a complex number, e taken mod 3.
std::complex<double> omega_power(int e);

/// (n / p)_3 for a split or inert prime p, via Euler's criterion in Z[w]/(p).
/// Throws DomainError for the ramified prime.
CubicSymbolValue symbol_prime(const EisensteinInt& n, const EisensteinPrime& p);

/// (n / modulus)_3, multiplicative in the modulus. The modulus is replaced by
/// its primary associate first; throws DomainError if it is zero or not
/// coprime to 3.
CubicSymbolValue symbol(const EisensteinInt& n, const EisensteinInt& modulus, const PrimeTable* table = nullptr);

/// r -> (r / modulus)_3 with the modulus factorisation cached.
class CubicCharacter {
 public:
  explicit CubicCharacter(const EisensteinInt& modulus, const PrimeTable* table = nullptr);
  CubicCharacter(const EisensteinInt& modulus, Factorization factorization);

  const EisensteinInt& modulus() const { return modulus_; }
  const Factorization& factorization() const { return factors_; }
  CubicSymbolValue operator()(const EisensteinInt& r) const;

 private:
  EisensteinInt modulus_;
  Factorization factors_;
};

struct FamilyMember {
  EisensteinInt conductor;
  std::int64_t norm = 0;
  Factorization factorization;
};

/// Builds a FamilyMember after checking f != 1, f = 1 (mod 9), f square-free.
FamilyMember make_family_member(const EisensteinInt& f, const PrimeTable* table = nullptr);

/// The character r -> (r / f)_3 of a family conductor. Throws std::logic_error
/// if chi(w) != 1, which would mean the family filter is broken.
CubicCharacter hecke_character(const FamilyMember& f);

/// Every family conductor with X_lo < N(f) <= X_hi in (norm, a, b) order.
std::vector<FamilyMember> family_iter(std::int64_t X_lo, std::int64_t X_hi, const PrimeTable* table = nullptr);

/// Fast evaluation of chi_f(p) = (p / f)_3 = (f / p)_3 for many primary f and a
/// fixed list of small primary primes p (cubic reciprocity). Each prime
/// carries a table of cubic classes of its residue field.
class ReciprocityTable {
 public:
  /// All split and inert primary primes with norm <= norm_bound.
  explicit ReciprocityTable(std::int64_t norm_bound);

  std::size_t size() const { return primes_.size(); }
  const std::vector<EisensteinPrime>& primes() const { return primes_; }
  std::int64_t bound() const { return bound_; }

  /// (f / p_i)_3 where p_i = primes()[i]; f must be primary.
  CubicSymbolValue chi_at(std::size_t i, const EisensteinInt& f) const;
  /// Packed exponents (0,1,2, 3 = zero) of (f / p_i)_3 for every i.
  void chi_all(const EisensteinInt& f, std::vector<std::uint8_t>& out) const;

 private:
  struct Entry {
    std::int64_t modulus;  // P for split primes, q for inert ones
    std::int64_t w;        // image of w in F_P (split only)
    bool split;
    std::size_t offset;    // start of this prime's class table in classes_
  };
  std::int64_t bound_;
  std::vector<EisensteinPrime> primes_;
  std::vector<Entry> entries_;
  std::vector<std::uint8_t> classes_;
};

}  // namespace cubic
