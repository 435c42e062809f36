// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "cubic/characters.hpp"

using namespace cubic;

namespace {

// Euler's criterion evaluated literally in Z[w]: find e with
// n^((N(p)-1)/3) - w^e divisible by p.
CubicSymbolValue euler_literal(const EisensteinInt& n, const EisensteinInt& p) {
  if (divides(p, n)) return CubicSymbolValue::zero();
  const std::int64_t e = (norm(p) - 1) / 3;
  EisensteinInt r{1, 0}, b = divmod(n, p).remainder;
  for (std::int64_t k = e; k > 0; k >>= 1) {
    if (k & 1) r = divmod(r * b, p).remainder;
    b = divmod(b * b, p).remainder;
  }
  for (int j = 0; j < 3; ++j) {
    if (divides(p, r - power(kOmega, j))) return CubicSymbolValue::omega_pow(j);
  }
  FAIL("no cube root of unity matched");
  return CubicSymbolValue::zero();
}

}  // namespace

TEST_CASE("symbol value algebra") {
  const auto w = CubicSymbolValue::omega_pow(1);
  CHECK(w * w * w == CubicSymbolValue::omega_pow(0));
  CHECK(w.conj() == CubicSymbolValue::omega_pow(2));
  CHECK((w * CubicSymbolValue::zero()).is_zero());
  CHECK(CubicSymbolValue::omega_pow(-1) == CubicSymbolValue::omega_pow(2));
  CHECK(std::abs(w.to_complex() - omega_power(1)) < 1e-15);
}

TEST_CASE("symbol at a prime") {
  const auto p2 = EisensteinPrime::from(-2);
  CHECK(symbol_prime(kOmega, p2) == CubicSymbolValue::omega_pow(1));
  CHECK(symbol_prime({-6, 0}, p2).is_zero());
  CHECK_THROWS_AS(EisensteinPrime::from(10), DomainError);
  CHECK_THROWS_AS(symbol_prime(2, EisensteinPrime::from(kRamifiedPrime)), DomainError);
  for (const auto& p : primary_primes(400)) {
    for (const auto& x : enumerate_primary(60)) {
      if (divides(p.value(), x)) continue;
      REQUIRE(symbol_prime(x * x * x, p) == CubicSymbolValue::omega_pow(0));
    }
    for (std::int64_t a = -6; a <= 6; ++a) {
      for (std::int64_t b = -6; b <= 6; ++b) {
        REQUIRE(symbol_prime({a, b}, p) == euler_literal({a, b}, p.value()));
      }
    }
  }
}

TEST_CASE("general modulus") {
  CHECK(symbol({5, 7}, 1) == CubicSymbolValue::omega_pow(0));
  CHECK(symbol(4, -5) == symbol(-2, -5).pow(2));
  CHECK_THROWS_AS(symbol(2, kRamifiedPrime), DomainError);
  CHECK_THROWS_AS(symbol(2, 0), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-300, 300);
  const auto mods = enumerate_primary(2000);
  std::uniform_int_distribution<std::size_t> pick(0, mods.size() - 1);
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInt m{d(rng), d(rng)}, n{d(rng), d(rng)};
    const CubicCharacter chi(mods[pick(rng)]);
    REQUIRE(chi(m * n) == chi(m) * chi(n));
    REQUIRE(chi(m).pow(2) == chi(m * m));
    REQUIRE(chi(m).conj() == chi(m * m));
    const EisensteinInt t{d(rng), d(rng)};
    REQUIRE(chi(m + chi.modulus() * t) == chi(m));
    const bool coprime = is_unit(gcd(m.is_zero() ? chi.modulus() : m, chi.modulus()));
    REQUIRE(chi(m).is_zero() == !coprime);
    if (coprime) REQUIRE(chi(m).pow(3) == CubicSymbolValue::omega_pow(0));
  }
}

TEST_CASE("cubic reciprocity for primary pairs up to norm 500") {
  const auto all = enumerate_primary(500);
  std::size_t pairs = 0;
  for (const auto& m : all) {
    for (const auto& n : all) {
      if (!is_unit(gcd(m, n))) continue;
      REQUIRE(symbol(m, n) == symbol(n, m));
      ++pairs;
    }
  }
  CHECK(pairs > 10000);
}

TEST_CASE("orthogonality over residues") {
  for (const auto& q : enumerate_primary(200)) {
    const CubicCharacter chi(q);
    std::complex<double> s = 0;
    std::int64_t count = 0;
    bool principal = true;
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for_each_lattice_point(norm(q), 1, 0, 1, 0, [&](const EisensteinInt& x) {
      const auto r = divmod(x, q).remainder;
      if (!seen.insert({r.a, r.b}).second) return;
      const auto v = chi(r);
      if (!v.is_zero() && v.exponent() != 0) principal = false;
      s += v.to_complex();
      ++count;
    });
    REQUIRE(count == norm(q));
    if (!principal) REQUIRE(std::abs(s) < 1e-9);
  }
}

TEST_CASE("family enumeration") {
  const auto fam = family_iter(1, 3000);
  bool saw10 = false;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& f = fam[i];
    REQUIRE(f.conductor != EisensteinInt{1, 0});
    REQUIRE(is_one_mod_nine(f.conductor));
    REQUIRE(f.norm % 9 == 1);
    REQUIRE(f.factorization.square_free());
    REQUIRE(hecke_character(f)(kOmega) == CubicSymbolValue::omega_pow(0));
    if (i) REQUIRE(canonical_less(fam[i - 1].conductor, f.conductor));
    saw10 = saw10 || f.conductor == EisensteinInt{10, 0};
  }
  CHECK(saw10);
  // Oracle: brute-force filter over the box.
  std::size_t want = 0;
  for (const auto& x : enumerate_primary(3000)) {
    if (x == EisensteinInt{1, 0} || !is_one_mod_nine(x)) continue;
    if (mobius(x) != 0) ++want;
  }
  CHECK(fam.size() == want);

  const auto f10 = make_family_member(10);
  const auto chi = hecke_character(f10);
  CHECK(chi(1) == CubicSymbolValue::omega_pow(0));
  CHECK(chi({10 * 7, 30}).is_zero());
  CHECK(chi(-1) == CubicSymbolValue::omega_pow(0));
  CHECK_THROWS_AS(make_family_member(1), DomainError);
  CHECK_THROWS_AS(make_family_member(100), DomainError);
  CHECK_THROWS_AS(make_family_member(4), DomainError);
}

TEST_CASE("reciprocity tables match the definition") {
  const ReciprocityTable table(3000);
  const auto fam = family_iter(1, 4000);
  std::vector<std::uint8_t> packed;
  for (const auto& f : fam) {
    const auto chi = hecke_character(f);
    table.chi_all(f.conductor, packed);
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto want = chi(table.primes()[i].value());
      REQUIRE(table.chi_at(i, f.conductor) == want);
      REQUIRE(packed[i] == want.packed());
    }
  }
}
