// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in the Eisenstein integers Z[w], w = exp(2 pi i / 3).
//
// Elements are stored as a + b*w with w^2 = -1 - w, so that
//   N(a + b*w) = (a + b*w)(a + b*conj(w)) = a^2 - a*b + b^2.
// Every product and norm is computed in 128-bit intermediates and checked;
// an overflow of the 64-bit storage throws std::overflow_error.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cubic {

/// Raised when an operation's precondition on its mathematical input fails
/// (zero modulus, element not coprime to 3, non-prime passed as a prime, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EisensteinInt {
  std::int64_t a = 0;  // coefficient of 1
  std::int64_t b = 0;  // coefficient of w

  constexpr EisensteinInt() = default;
  constexpr EisensteinInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;

  /// Embedding into C with w = (-1 + i*sqrt(3)) / 2.
  std::complex<double> to_complex() const;
  std::string to_string() const;
};

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);

std::int64_t norm(const EisensteinInt& n);
EisensteinInt conjugate(const EisensteinInt& n);
EisensteinInt power(EisensteinInt base, unsigned exponent);

/// Trace of n over Q: n + conj(n) = 2a - b.
std::int64_t trace(const EisensteinInt& n);

/// Canonical total order (norm, a, b) used for every enumeration and reduction.
bool canonical_less(const EisensteinInt& x, const EisensteinInt& y);
struct CanonicalLess {
  bool operator()(const EisensteinInt& x, const EisensteinInt& y) const { return canonical_less(x, y); }
};

struct EisensteinHash {
  std::size_t operator()(const EisensteinInt& n) const noexcept {
    return std::hash<std::int64_t>{}(n.a * 0x9E3779B97F4A7C15LL ^ n.b);
  }
};

inline constexpr EisensteinInt kOmega{0, 1};
/// Fixed representative of sqrt(-3): (1 + 2w)^2 = -3.
inline constexpr EisensteinInt kSqrtMinus3{1, 2};
/// The ramified prime 1 - w above 3 (norm 3).
inline constexpr EisensteinInt kRamifiedPrime{1, -1};

/// The six units in the fixed order 1, w, w^2, -1, -w, -w^2.
const std::array<EisensteinInt, 6>& units();
std::array<EisensteinInt, 6> associates(const EisensteinInt& n);
bool is_unit(const EisensteinInt& n);

bool coprime_to_three(const EisensteinInt& n);
/// n = 1 (mod 3) in Z[w], i.e. a = 1 (mod 3) and b = 0 (mod 3).
bool is_primary(const EisensteinInt& n);
/// n = 1 (mod 9) in Z[w].
bool is_one_mod_nine(const EisensteinInt& n);

/// The unique associate u*n with u*n = 1 (mod 3). Throws DomainError for zero
/// or for elements divisible by 1 - w.
EisensteinInt primary_associate(const EisensteinInt& n);

struct DivMod {
  EisensteinInt quotient;
  EisensteinInt remainder;
};

/// Euclidean division m = q*n + r with q the lattice point nearest to m/n
/// (minimal N(r); ties broken by the lexicographically smaller q).
DivMod divmod(const EisensteinInt& m, const EisensteinInt& n);
bool divides(const EisensteinInt& d, const EisensteinInt& n);
/// n / d, throwing DomainError unless d divides n exactly.
EisensteinInt exact_quotient(const EisensteinInt& n, const EisensteinInt& d);

/// Greatest common divisor, normalised to its primary associate when it is
/// coprime to 3 and otherwise to the lexicographically smallest associate.
EisensteinInt gcd(const EisensteinInt& m, const EisensteinInt& n);

// ---------------------------------------------------------------------------
// Primes and factorisation

enum class PrimeKind {
  Split,     // norm is a rational prime p = 1 (mod 3)
  Inert,     // norm is q^2, q = 2 (mod 3) a rational prime
  Ramified,  // 1 - w, norm 3; never a family prime
};

class EisensteinPrime {
 public:
  /// Validates primality and normalises to the primary associate (the
  /// ramified prime is kept as 1 - w). Throws DomainError if n is not prime.
  static EisensteinPrime from(const EisensteinInt& n);

  const EisensteinInt& value() const { return value_; }
  PrimeKind kind() const { return kind_; }
  std::int64_t norm() const { return norm_; }
  /// The rational prime below: p for split primes, q for inert ones, 3 for 1 - w.
  std::int64_t rational_prime() const { return rational_; }

  friend bool operator==(const EisensteinPrime& x, const EisensteinPrime& y) { return x.value_ == y.value_; }

 private:
  EisensteinPrime(EisensteinInt v, PrimeKind k, std::int64_t n, std::int64_t p)
      : value_(v), kind_(k), norm_(n), rational_(p) {}

  EisensteinInt value_;
  PrimeKind kind_;
  std::int64_t norm_;
  std::int64_t rational_;

  friend class PrimeTable;
  friend struct PrimeFactory;
};

struct PrimePower {
  EisensteinPrime prime;
  int exponent;
};

struct Factorization {
  EisensteinInt unit{1, 0};
  std::vector<PrimePower> factors;  // sorted by (norm, a, b), pairwise non-associate

  EisensteinInt reassemble() const;
  bool coprime_to_three() const;
  bool square_free() const;
};

/// Rational integer helpers.
std::int64_t isqrt(std::int64_t n);
bool is_rational_prime(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factor_rational(std::int64_t n);

/// Primary prime above a rational prime p = 1 (mod 3), found by exhaustive
/// search over a in [0, ceil(2 sqrt(p/3))] for a^2 - ab + b^2 = p.
EisensteinInt lift_split_prime(std::int64_t p);

bool is_eisenstein_prime(const EisensteinInt& n);

/// Read-only cache of rational smallest-prime-factor data and split-prime
/// lifts for all norms up to a declared bound. Build once, share freely.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t norm_bound);

  std::int64_t bound() const { return bound_; }
  /// Factorisation of a rational integer 1 <= n <= bound().
  std::vector<std::pair<std::int64_t, int>> factor_rational(std::int64_t n) const;
  /// Both primary primes above p = 1 (mod 3), p <= bound(), in canonical order.
  std::pair<EisensteinInt, EisensteinInt> split_primes(std::int64_t p) const;
  bool is_rational_prime(std::int64_t n) const;

 private:
  std::int64_t bound_;
  std::vector<std::int32_t> spf_;
  std::unordered_map<std::int64_t, std::pair<EisensteinInt, EisensteinInt>> lifts_;
};

/// Exact factorisation unit * prod p_i^e_i. Uses `table` for norms within its
/// bound and falls back to trial division otherwise. Throws DomainError on 0.
Factorization factor(const EisensteinInt& n, const PrimeTable* table = nullptr);

using ElementFilter = std::function<bool(const EisensteinInt&)>;

/// Every primary element (= 1 mod 3) with 0 < N <= norm_max passing `filter`,
/// each exactly once, in (norm, a, b) order.
std::vector<EisensteinInt> enumerate_primary(std::int64_t norm_max, const ElementFilter& filter = {});

/// Primary primes (split and inert, never 1 - w) with norm <= norm_max, canonical order.
std::vector<EisensteinPrime> primary_primes(std::int64_t norm_max);

/// Calls f(x) for every lattice point x with N(x) <= norm_max, a = a_res (mod a_mod)
/// and b = b_res (mod b_mod). Order is unspecified.
void for_each_lattice_point(std::int64_t norm_max, std::int64_t a_mod, std::int64_t a_res, std::int64_t b_mod,
                            std::int64_t b_res, const std::function<void(const EisensteinInt&)>& f);

// ---------------------------------------------------------------------------
// Arithmetic functions over K = Q(w), evaluated on the ideal generated by n.

enum class ArithmeticKind { Lambda, Mu, Phi };

double von_mangoldt(const EisensteinInt& n, const PrimeTable* table = nullptr);
int mobius(const EisensteinInt& n, const PrimeTable* table = nullptr);
std::int64_t euler_phi(const EisensteinInt& n, const PrimeTable* table = nullptr);
double arithmetic_function(ArithmeticKind kind, const EisensteinInt& n, const PrimeTable* table = nullptr);

}  // namespace cubic
