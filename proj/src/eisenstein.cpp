// SPDX-License-Identifier: Apache-2.0
#include "cubic/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cubic {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string("Eisenstein integer overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool lex_less(const EisensteinInt& x, const EisensteinInt& y) {
  return x.a != y.a ? x.a < y.a : x.b < y.b;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::complex<double> EisensteinInt::to_complex() const {
  return {static_cast<double>(a) - 0.5 * static_cast<double>(b), 0.5 * std::sqrt(3.0) * static_cast<double>(b)};
}

std::string EisensteinInt::to_string() const {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
  return {narrow(static_cast<i128>(x.a) + y.a, "add"), narrow(static_cast<i128>(x.b) + y.b, "add")};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
  return {narrow(static_cast<i128>(x.a) - y.a, "sub"), narrow(static_cast<i128>(x.b) - y.b, "sub")};
}

EisensteinInt operator-(const EisensteinInt& x) { return EisensteinInt{} - x; }

// (a + bw)(c + dw) = ac + (ad + bc) w + bd w^2, and w^2 = -1 - w.
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
  const i128 ac = static_cast<i128>(x.a) * y.a;
  const i128 bd = static_cast<i128>(x.b) * y.b;
  const i128 cross = static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a;
  return {narrow(ac - bd, "mul"), narrow(cross - bd, "mul")};
}

std::int64_t norm(const EisensteinInt& n) {
  const i128 a = n.a, b = n.b;
  return narrow(a * a - a * b + b * b, "norm");
}

EisensteinInt conjugate(const EisensteinInt& n) { return {narrow(static_cast<i128>(n.a) - n.b, "conj"), -n.b}; }

EisensteinInt power(EisensteinInt base, unsigned exponent) {
  EisensteinInt r{1, 0};
  while (exponent) {
    if (exponent & 1U) r = r * base;
    exponent >>= 1U;
    if (exponent) base = base * base;
  }
  return r;
}

std::int64_t trace(const EisensteinInt& n) { return narrow(2 * static_cast<i128>(n.a) - n.b, "trace"); }

bool canonical_less(const EisensteinInt& x, const EisensteinInt& y) {
  const auto nx = norm(x), ny = norm(y);
  if (nx != ny) return nx < ny;
  return lex_less(x, y);
}

const std::array<EisensteinInt, 6>& units() {
  static const std::array<EisensteinInt, 6> u{EisensteinInt{1, 0}, EisensteinInt{0, 1},  EisensteinInt{-1, -1},
                                              EisensteinInt{-1, 0}, EisensteinInt{0, -1}, EisensteinInt{1, 1}};
  return u;
}

std::array<EisensteinInt, 6> associates(const EisensteinInt& n) {
  std::array<EisensteinInt, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = units()[i] * n;
  return out;
}

bool is_unit(const EisensteinInt& n) { return norm(n) == 1; }

// N(a + bw) = (a + b)^2 - 3ab, so 3 | N iff 3 | a + b.
bool coprime_to_three(const EisensteinInt& n) { return mod_pos(n.a % 3 + n.b % 3, 3) != 0; }

bool is_primary(const EisensteinInt& n) { return mod_pos(n.a, 3) == 1 && mod_pos(n.b, 3) == 0; }

bool is_one_mod_nine(const EisensteinInt& n) { return mod_pos(n.a, 9) == 1 && mod_pos(n.b, 9) == 0; }

EisensteinInt primary_associate(const EisensteinInt& n) {
  if (n.is_zero()) throw DomainError("primary_associate: zero has no primary associate");
  if (!coprime_to_three(n)) throw DomainError("primary_associate: " + n.to_string() + " is divisible by 1 - w");
  EisensteinInt found;
  int hits = 0;
  for (const auto& v : associates(n)) {
    if (is_primary(v)) {
      found = v;
      ++hits;
    }
  }
  if (hits != 1) throw std::logic_error("primary_associate: expected exactly one primary associate");
  return found;
}

DivMod divmod(const EisensteinInt& m, const EisensteinInt& n) {
  if (n.is_zero()) throw DomainError("divmod: division by zero");
  const i128 nn = norm(n);
  const EisensteinInt nc = conjugate(n);
  // m * conj(n) = X + Y w, computed without narrowing.
  const i128 ac = static_cast<i128>(m.a) * nc.a;
  const i128 bd = static_cast<i128>(m.b) * nc.b;
  const i128 X = ac - bd;
  const i128 Y = static_cast<i128>(m.a) * nc.b + static_cast<i128>(m.b) * nc.a - bd;
  const i128 fx = floor_div(X, nn), fy = floor_div(Y, nn);

  // The nearest point of the triangular lattice lies on a corner of the
  // fundamental cell containing m/n.
  bool have = false;
  EisensteinInt best_q, best_r;
  std::int64_t best_norm = 0;
  for (int dx = 0; dx <= 1; ++dx) {
    for (int dy = 0; dy <= 1; ++dy) {
      const EisensteinInt q{narrow(fx + dx, "divmod"), narrow(fy + dy, "divmod")};
      const EisensteinInt r = m - q * n;
      const std::int64_t rn = norm(r);
      if (!have || rn < best_norm || (rn == best_norm && lex_less(q, best_q))) {
        have = true;
        best_q = q;
        best_r = r;
        best_norm = rn;
      }
    }
  }
  return {best_q, best_r};
}

bool divides(const EisensteinInt& d, const EisensteinInt& n) {
  if (d.is_zero()) return n.is_zero();
  const i128 nn = norm(d);
  const EisensteinInt dc = conjugate(d);
  const i128 bd = static_cast<i128>(n.b) * dc.b;
  const i128 X = static_cast<i128>(n.a) * dc.a - bd;
  const i128 Y = static_cast<i128>(n.a) * dc.b + static_cast<i128>(n.b) * dc.a - bd;
  return X % nn == 0 && Y % nn == 0;
}

EisensteinInt exact_quotient(const EisensteinInt& n, const EisensteinInt& d) {
  if (d.is_zero()) throw DomainError("exact_quotient: division by zero");
  const i128 nn = norm(d);
  const EisensteinInt dc = conjugate(d);
  const i128 bd = static_cast<i128>(n.b) * dc.b;
  const i128 X = static_cast<i128>(n.a) * dc.a - bd;
  const i128 Y = static_cast<i128>(n.a) * dc.b + static_cast<i128>(n.b) * dc.a - bd;
  if (X % nn != 0 || Y % nn != 0) throw DomainError("exact_quotient: " + d.to_string() + " does not divide " + n.to_string());
  return {narrow(X / nn, "exact_quotient"), narrow(Y / nn, "exact_quotient")};
}

EisensteinInt gcd(const EisensteinInt& m, const EisensteinInt& n) {
  if (m.is_zero() && n.is_zero()) throw DomainError("gcd: both arguments are zero");
  EisensteinInt x = m, y = n;
  while (!y.is_zero()) {
    EisensteinInt r = divmod(x, y).remainder;
    x = y;
    y = r;
  }
  if (coprime_to_three(x)) return primary_associate(x);
  EisensteinInt best = x;
  for (const auto& v : associates(x)) {
    if (lex_less(v, best)) best = v;
  }
  return best;
}

// ---------------------------------------------------------------------------

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_rational_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This witness set is deterministic for every 64-bit input.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factor_rational(std::int64_t n) {
  if (n < 1) throw DomainError("factor_rational expects a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  auto take = [&](std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  for (std::int64_t p = 5; p * p <= n; p += 6) {
    take(p);
    take(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

EisensteinInt lift_split_prime(std::int64_t p) {
  if (p % 3 != 1 || !is_rational_prime(p)) throw DomainError("lift_split_prime: p must be a prime = 1 (mod 3)");
  const std::int64_t a_max = static_cast<std::int64_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(p) / 3.0)));
  bool have = false;
  EisensteinInt best;
  for (std::int64_t a = 0; a <= a_max; ++a) {
    const std::int64_t disc = 4 * p - 3 * a * a;
    if (disc < 0) break;
    const std::int64_t s = isqrt(disc);
    if (s * s != disc) continue;
    for (std::int64_t sign : {-1, 1}) {
      const std::int64_t twice_b = a + sign * s;
      if (twice_b % 2 != 0) continue;
      const EisensteinInt x{a, twice_b / 2};
      if (norm(x) != p) continue;
      const EisensteinInt prim = primary_associate(x);
      if (!have || canonical_less(prim, best)) {
        best = prim;
        have = true;
      }
    }
  }
  if (!have) throw std::logic_error("lift_split_prime: no representation found");
  return best;
}

bool is_eisenstein_prime(const EisensteinInt& n) {
  if (n.is_zero()) return false;
  const std::int64_t nn = norm(n);
  if (is_rational_prime(nn)) return true;
  const std::int64_t q = isqrt(nn);
  return q * q == nn && q % 3 == 2 && is_rational_prime(q);
}

struct PrimeFactory {
  static EisensteinPrime make(EisensteinInt v, PrimeKind k, std::int64_t n, std::int64_t p) { return {v, k, n, p}; }
};

EisensteinPrime EisensteinPrime::from(const EisensteinInt& n) {
  if (!is_eisenstein_prime(n)) throw DomainError("EisensteinPrime: " + n.to_string() + " is not prime");
  const std::int64_t nn = cubic::norm(n);
  if (nn == 3) return {kRamifiedPrime, PrimeKind::Ramified, 3, 3};
  if (nn % 3 == 1 && is_rational_prime(nn)) return {primary_associate(n), PrimeKind::Split, nn, nn};
  return {primary_associate(n), PrimeKind::Inert, nn, isqrt(nn)};
}

PrimeTable::PrimeTable(std::int64_t norm_bound) : bound_(std::max<std::int64_t>(norm_bound, 1)) {
  if (bound_ > std::numeric_limits<std::int32_t>::max() / 2) throw DomainError("PrimeTable: bound too large");
  spf_.assign(static_cast<std::size_t>(bound_) + 1, 0);
  for (std::int64_t i = 2; i <= bound_; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::int32_t>(i);
    for (std::int64_t j = i * i; j <= bound_; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::int32_t>(i);
    }
  }
  // Primary points of prime norm: a = 1 (mod 3), b = 0 (mod 3).
  for_each_lattice_point(bound_, 3, 1, 3, 0, [&](const EisensteinInt& x) {
    const std::int64_t nn = norm(x);
    if (nn < 2 || spf_[nn] != nn || nn % 3 != 1) return;
    auto [it, fresh] = lifts_.try_emplace(nn, x, x);
    if (fresh) return;
    auto& pr = it->second;
    if (canonical_less(x, pr.first)) pr.first = x;
    if (canonical_less(pr.second, x)) pr.second = x;
  });
}

std::vector<std::pair<std::int64_t, int>> PrimeTable::factor_rational(std::int64_t n) const {
  if (n < 1 || n > bound_) return cubic::factor_rational(n);
  std::vector<std::pair<std::int64_t, int>> out;
  while (n > 1) {
    const std::int64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::pair<EisensteinInt, EisensteinInt> PrimeTable::split_primes(std::int64_t p) const {
  auto it = lifts_.find(p);
  if (it == lifts_.end()) {
    const EisensteinInt pi = lift_split_prime(p);
    const EisensteinInt other = conjugate(pi);
    return canonical_less(pi, other) ? std::pair{pi, other} : std::pair{other, pi};
  }
  return it->second;
}

bool PrimeTable::is_rational_prime(std::int64_t n) const {
  if (n < 2) return false;
  if (n <= bound_) return spf_[n] == n;
  return cubic::is_rational_prime(n);
}

EisensteinInt Factorization::reassemble() const {
  EisensteinInt r = unit;
  for (const auto& f : factors) r = r * power(f.prime.value(), static_cast<unsigned>(f.exponent));
  return r;
}

bool Factorization::coprime_to_three() const {
  return std::none_of(factors.begin(), factors.end(),
                      [](const PrimePower& f) { return f.prime.kind() == PrimeKind::Ramified; });
}

bool Factorization::square_free() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

Factorization factor(const EisensteinInt& n, const PrimeTable* table) {
  if (n.is_zero()) throw DomainError("factor: zero has no factorisation");
  const std::int64_t nn = norm(n);
  const auto rational = table ? table->factor_rational(nn) : factor_rational(nn);

  Factorization out;
  EisensteinInt rest = n;
  auto strip = [&](const EisensteinInt& pi, int max_e) {
    int e = 0;
    while (e < max_e && divides(pi, rest)) {
      rest = exact_quotient(rest, pi);
      ++e;
    }
    return e;
  };

  for (const auto& [p, e] : rational) {
    if (p == 3) {
      const int got = strip(kRamifiedPrime, e);
      out.factors.push_back({PrimeFactory::make(kRamifiedPrime, PrimeKind::Ramified, 3, 3), got});
    } else if (p % 3 == 2) {
      const EisensteinInt q{-p, 0};
      const int got = strip(q, e / 2);
      out.factors.push_back({PrimeFactory::make(q, PrimeKind::Inert, p * p, p), got});
    } else {
      const auto [pi1, pi2] = table ? table->split_primes(p) : PrimeTable(1).split_primes(p);
      const int e1 = strip(pi1, e);
      const int e2 = strip(pi2, e - e1);
      if (e1) out.factors.push_back({PrimeFactory::make(pi1, PrimeKind::Split, p, p), e1});
      if (e2) out.factors.push_back({PrimeFactory::make(pi2, PrimeKind::Split, p, p), e2});
    }
  }
  if (!is_unit(rest)) throw std::logic_error("factor: cofactor is not a unit for " + n.to_string());
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& x, const PrimePower& y) { return canonical_less(x.prime.value(), y.prime.value()); });
  return out;
}

void for_each_lattice_point(std::int64_t norm_max, std::int64_t a_mod, std::int64_t a_res, std::int64_t b_mod,
                            std::int64_t b_res, const std::function<void(const EisensteinInt&)>& f) {
  if (norm_max < 0) return;
  // a^2 - ab + b^2 <= M forces 3a^2 <= 4M, and for fixed a the admissible b
  // lie between the roots (a -+ sqrt(4M - 3a^2)) / 2.
  const std::int64_t a_max = isqrt(4 * norm_max / 3) + 1;
  std::int64_t a = -a_max;
  a += mod_pos(a_res - a, a_mod);
  for (; a <= a_max; a += a_mod) {
    const i128 disc = 4 * static_cast<i128>(norm_max) - 3 * static_cast<i128>(a) * a;
    if (disc < 0) continue;
    const std::int64_t s = isqrt(static_cast<std::int64_t>(disc));
    std::int64_t b_lo = static_cast<std::int64_t>(floor_div(a - s - 1, 2));
    const std::int64_t b_hi = static_cast<std::int64_t>(floor_div(a + s + 1, 2)) + 1;
    b_lo += mod_pos(b_res - b_lo, b_mod);
    for (std::int64_t b = b_lo; b <= b_hi; b += b_mod) {
      const EisensteinInt x{a, b};
      if (norm(x) <= norm_max) f(x);
    }
  }
}

std::vector<EisensteinInt> enumerate_primary(std::int64_t norm_max, const ElementFilter& filter) {
  std::vector<EisensteinInt> out;
  if (norm_max < 1) return out;
  for_each_lattice_point(norm_max, 3, 1, 3, 0, [&](const EisensteinInt& x) {
    if (!filter || filter(x)) out.push_back(x);
  });
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

std::vector<EisensteinPrime> primary_primes(std::int64_t norm_max) {
  std::vector<EisensteinPrime> out;
  if (norm_max < 4) return out;
  const PrimeTable table(norm_max);
  for (std::int64_t p = 2; p <= norm_max; ++p) {
    if (!table.is_rational_prime(p)) continue;
    if (p % 3 == 1) {
      const auto [x, y] = table.split_primes(p);
      out.push_back(PrimeFactory::make(x, PrimeKind::Split, p, p));
      out.push_back(PrimeFactory::make(y, PrimeKind::Split, p, p));
    } else if (p % 3 == 2 && p * p <= norm_max) {
      out.push_back(PrimeFactory::make({-p, 0}, PrimeKind::Inert, p * p, p));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EisensteinPrime& x, const EisensteinPrime& y) { return canonical_less(x.value(), y.value()); });
  return out;
}

double von_mangoldt(const EisensteinInt& n, const PrimeTable* table) {
  const auto f = factor(n, table);
  if (f.factors.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.factors.front().prime.norm()));
}

int mobius(const EisensteinInt& n, const PrimeTable* table) {
  const auto f = factor(n, table);
  if (!f.square_free()) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t euler_phi(const EisensteinInt& n, const PrimeTable* table) {
  const auto f = factor(n, table);
  std::int64_t r = 1;
  for (const auto& pp : f.factors) {
    std::int64_t t = pp.prime.norm() - 1;
    for (int i = 1; i < pp.exponent; ++i) t = narrow(static_cast<i128>(t) * pp.prime.norm(), "euler_phi");
    r = narrow(static_cast<i128>(r) * t, "euler_phi");
  }
  return r;
}

double arithmetic_function(ArithmeticKind kind, const EisensteinInt& n, const PrimeTable* table) {
  switch (kind) {
    case ArithmeticKind::Lambda:
      return von_mangoldt(n, table);
    case ArithmeticKind::Mu:
      return mobius(n, table);
    case ArithmeticKind::Phi:
      return static_cast<double>(euler_phi(n, table));
  }
  return 0.0;
}

}  // namespace cubic
