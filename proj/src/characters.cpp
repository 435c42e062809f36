// SPDX-License-Identifier: Apache-2.0
#include "cubic/characters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubic {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod_pos(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Arithmetic in F_q[w] = F_{q^2} for an inert rational prime q.
struct Fq2 {
  std::int64_t x, y;  // x + y w
};

Fq2 mul(Fq2 u, Fq2 v, std::int64_t q) {
  const std::int64_t xx = mulmod(u.x, v.x, q), yy = mulmod(u.y, v.y, q);
  const std::int64_t cross = (mulmod(u.x, v.y, q) + mulmod(u.y, v.x, q)) % q;
  return {mod_pos(xx - yy, q), mod_pos(cross - yy, q)};
}

Fq2 pow(Fq2 b, std::int64_t e, std::int64_t q) {
  Fq2 r{1 % q, 0};
  while (e > 0) {
    if (e & 1) r = mul(r, b, q);
    b = mul(b, b, q);
    e >>= 1;
  }
  return r;
}

// Image of w in Z[w]/(pi) = F_P for a split prime pi = a + b w: w = -a / b.
std::int64_t omega_mod_split(const EisensteinInt& pi, std::int64_t P) {
  const std::int64_t b = mod_pos(pi.b, P);
  if (b == 0) throw std::logic_error("split prime with b = 0 (mod P)");
  return mod_pos(-mulmod(mod_pos(pi.a, P), powmod(b, P - 2, P), P), P);
}

int classify_split(std::int64_t t, std::int64_t w, std::int64_t P) {
  if (t == 1) return 0;
  if (t == w) return 1;
  if (t == mulmod(w, w, P)) return 2;
  throw std::logic_error("cubic symbol: Euler criterion produced a non-cube-root of unity");
}

int classify_inert(Fq2 t, std::int64_t q) {
  if (t.x == 1 % q && t.y == 0) return 0;
  if (t.x == 0 && t.y == 1) return 1;
  if (t.x == q - 1 && t.y == q - 1) return 2;
  throw std::logic_error("cubic symbol: Euler criterion produced a non-cube-root of unity");
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& [p, e] : factor_rational(n)) out.push_back(p);
  return out;
}

}  // namespace

std::complex<double> omega_power(int e) {
  static const double h = 0.5 * std::sqrt(3.0);
  switch (((e % 3) + 3) % 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {-0.5, h};
    default:
      return {-0.5, -h};
  }
}

std::complex<double> CubicSymbolValue::to_complex() const {
  return is_zero() ? std::complex<double>{0.0, 0.0} : omega_power(tag_);
}

CubicSymbolValue symbol_prime(const EisensteinInt& n, const EisensteinPrime& p) {
  switch (p.kind()) {
    case PrimeKind::Ramified:
      throw DomainError("symbol_prime: the cubic symbol is undefined at the prime above 3");
    case PrimeKind::Split: {
      const std::int64_t P = p.norm();
      const std::int64_t w = omega_mod_split(p.value(), P);
      const std::int64_t r = mod_pos(mod_pos(n.a, P) + mulmod(mod_pos(n.b, P), w, P), P);
      if (r == 0) return CubicSymbolValue::zero();
      return CubicSymbolValue::omega_pow(classify_split(powmod(r, (P - 1) / 3, P), w, P));
    }
    case PrimeKind::Inert: {
      const std::int64_t q = p.rational_prime();
      const Fq2 r{mod_pos(n.a, q), mod_pos(n.b, q)};
      if (r.x == 0 && r.y == 0) return CubicSymbolValue::zero();
      return CubicSymbolValue::omega_pow(classify_inert(pow(r, (q * q - 1) / 3, q), q));
    }
  }
  throw std::logic_error("symbol_prime: unknown prime kind");
}

CubicCharacter::CubicCharacter(const EisensteinInt& modulus, const PrimeTable* table) {
  if (modulus.is_zero()) throw DomainError("cubic character: zero modulus");
  if (!coprime_to_three(modulus)) throw DomainError("cubic character: modulus must be coprime to 3");
  modulus_ = primary_associate(modulus);
  factors_ = factor(modulus_, table);
}

CubicCharacter::CubicCharacter(const EisensteinInt& modulus, Factorization factorization)
    : modulus_(modulus), factors_(std::move(factorization)) {
  if (!is_primary(modulus_)) throw DomainError("cubic character: modulus must be primary");
}

CubicSymbolValue CubicCharacter::operator()(const EisensteinInt& r) const {
  CubicSymbolValue v = CubicSymbolValue::omega_pow(0);
  for (const auto& pp : factors_.factors) {
    v = v * symbol_prime(r, pp.prime).pow(pp.exponent);
    if (v.is_zero()) break;
  }
  return v;
}

CubicSymbolValue symbol(const EisensteinInt& n, const EisensteinInt& modulus, const PrimeTable* table) {
  return CubicCharacter(modulus, table)(n);
}

FamilyMember make_family_member(const EisensteinInt& f, const PrimeTable* table) {
  if (f == EisensteinInt{1, 0}) throw DomainError("family: the trivial conductor 1 is excluded");
  if (!is_one_mod_nine(f)) throw DomainError("family: conductor " + f.to_string() + " is not 1 (mod 9)");
  FamilyMember m{f, norm(f), factor(f, table)};
  if (!m.factorization.square_free()) throw DomainError("family: conductor " + f.to_string() + " is not square-free");
  if (m.norm % 9 != 1) throw std::logic_error("family: conductor = 1 (mod 9) but its norm is not");
  return m;
}

CubicCharacter hecke_character(const FamilyMember& f) {
  CubicCharacter chi(f.conductor, f.factorization);
  if (chi(kOmega) != CubicSymbolValue::omega_pow(0)) {
    throw std::logic_error("hecke_character: chi(w) != 1 for conductor " + f.conductor.to_string());
  }
  return chi;
}

std::vector<FamilyMember> family_iter(std::int64_t X_lo, std::int64_t X_hi, const PrimeTable* table) {
  std::vector<FamilyMember> out;
  if (X_hi < 1 || X_hi <= X_lo) return out;
  std::optional<PrimeTable> local;
  if ((table == nullptr || table->bound() < X_hi) && X_hi <= 50'000'000) {
    local.emplace(X_hi);
    table = &*local;
  }
  std::vector<EisensteinInt> candidates;
  for_each_lattice_point(X_hi, 9, 1, 9, 0, [&](const EisensteinInt& x) {
    const std::int64_t n = norm(x);
    if (n > X_lo && n > 1) candidates.push_back(x);
  });
  std::sort(candidates.begin(), candidates.end(), CanonicalLess{});
  for (const auto& c : candidates) {
    Factorization fac = factor(c, table);
    if (!fac.square_free()) continue;
    out.push_back(FamilyMember{c, norm(c), std::move(fac)});
  }
  return out;
}

// ---------------------------------------------------------------------------

ReciprocityTable::ReciprocityTable(std::int64_t norm_bound) : bound_(norm_bound), primes_(primary_primes(norm_bound)) {
  entries_.reserve(primes_.size());
  for (const auto& p : primes_) {
    Entry e{};
    e.offset = classes_.size();
    if (p.kind() == PrimeKind::Split) {
      const std::int64_t P = p.norm();
      e.modulus = P;
      e.split = true;
      e.w = omega_mod_split(p.value(), P);
      const auto divs = prime_divisors(P - 1);
      std::int64_t g = 2;
      for (;; ++g) {
        bool ok = true;
        for (auto l : divs) ok = ok && powmod(g, (P - 1) / l, P) != 1;
        if (ok) break;
      }
      // g^k has class k or 2k depending on which cube root of unity g^((P-1)/3) is.
      const int c = classify_split(powmod(g, (P - 1) / 3, P), e.w, P);
      classes_.resize(e.offset + static_cast<std::size_t>(P), 3);
      std::int64_t v = 1;
      for (std::int64_t k = 0; k < P - 1; ++k) {
        classes_[e.offset + static_cast<std::size_t>(v)] = static_cast<std::uint8_t>((c * k) % 3);
        v = mulmod(v, g, P);
      }
    } else {
      const std::int64_t q = p.rational_prime();
      e.modulus = q;
      e.split = false;
      const std::int64_t order = q * q - 1;
      const auto divs = prime_divisors(order);
      Fq2 g{0, 1};
      bool found = false;
      for (std::int64_t y = 0; y < q && !found; ++y) {
        for (std::int64_t x = 0; x < q && !found; ++x) {
          if (x == 0 && y == 0) continue;
          bool ok = true;
          for (auto l : divs) {
            const Fq2 t = pow({x, y}, order / l, q);
            ok = ok && !(t.x == 1 && t.y == 0);
          }
          if (ok) {
            g = {x, y};
            found = true;
          }
        }
      }
      const int c = classify_inert(pow(g, order / 3, q), q);
      classes_.resize(e.offset + static_cast<std::size_t>(q * q), 3);
      Fq2 v{1, 0};
      for (std::int64_t k = 0; k < order; ++k) {
        classes_[e.offset + static_cast<std::size_t>(v.x + v.y * q)] = static_cast<std::uint8_t>((c * k) % 3);
        v = mul(v, g, q);
      }
    }
    entries_.push_back(e);
  }
}

CubicSymbolValue ReciprocityTable::chi_at(std::size_t i, const EisensteinInt& f) const {
  const Entry& e = entries_[i];
  const std::int64_t m = e.modulus;
  std::size_t idx;
  if (e.split) {
    idx = static_cast<std::size_t>(mod_pos(mod_pos(f.a, m) + mod_pos(f.b, m) * e.w, m));
  } else {
    idx = static_cast<std::size_t>(mod_pos(f.a, m) + mod_pos(f.b, m) * m);
  }
  const std::uint8_t c = classes_[e.offset + idx];
  return c == 3 ? CubicSymbolValue::zero() : CubicSymbolValue::omega_pow(c);
}

void ReciprocityTable::chi_all(const EisensteinInt& f, std::vector<std::uint8_t>& out) const {
  out.resize(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    const std::int64_t m = e.modulus;
    const std::int64_t fa = mod_pos(f.a, m), fb = mod_pos(f.b, m);
    const std::int64_t idx = e.split ? (fa + fb * e.w) % m : fa + fb * m;
    out[i] = classes_[e.offset + static_cast<std::size_t>(idx)];
  }
}

}  // namespace cubic
