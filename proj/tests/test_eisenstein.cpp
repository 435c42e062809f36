// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "cubic/eisenstein.hpp"

using namespace cubic;

TEST_CASE("norm and conjugation") {
  CHECK(norm({0, 0}) == 0);
  CHECK(norm({-2, 0}) == 4);
  // With w = exp(2 pi i/3), 1 + w = -w^2 is a unit and 1 - w carries norm 3.
  CHECK(norm({1, 1}) == 1);
  CHECK(norm(kRamifiedPrime) == 3);
  CHECK(conjugate({3, 5}) == EisensteinInt{-2, -5});
  CHECK(kSqrtMinus3 * kSqrtMinus3 == EisensteinInt{-3, 0});
  CHECK(kOmega * kOmega * kOmega == EisensteinInt{1, 0});
  CHECK(std::abs(EisensteinInt{0, 1}.to_complex() - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-20000, 20000);
  for (int i = 0; i < 10000; ++i) {
    const EisensteinInt m{d(rng), d(rng)}, n{d(rng), d(rng)};
    REQUIRE(norm(m * n) == norm(m) * norm(n));
    REQUIRE(m * conjugate(m) == EisensteinInt{norm(m), 0});
    REQUIRE(std::abs(std::norm(m.to_complex()) - static_cast<double>(norm(m))) <= 1e-6 * norm(m) + 1e-9);
  }
}

TEST_CASE("overflow is reported") {
  const EisensteinInt big{std::numeric_limits<std::int64_t>::max() / 2, 0};
  CHECK_THROWS_AS(norm(big), std::overflow_error);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big + big + big, std::overflow_error);
}

TEST_CASE("primary associates") {
  CHECK(primary_associate(2) == EisensteinInt{-2, 0});
  CHECK(primary_associate(1) == EisensteinInt{1, 0});
  CHECK_THROWS_AS(primary_associate(kRamifiedPrime), DomainError);
  CHECK_THROWS_AS(primary_associate({0, 0}), DomainError);
  CHECK_THROWS_AS(primary_associate(3), DomainError);
  for (std::int64_t a = -30; a <= 30; ++a) {
    for (std::int64_t b = -30; b <= 30; ++b) {
      const EisensteinInt n{a, b};
      if (n.is_zero() || !coprime_to_three(n)) continue;
      const auto p = primary_associate(n);
      REQUIRE(is_primary(p));
      REQUIRE(primary_associate(p) == p);
      const auto as = associates(n);
      REQUIRE(std::find(as.begin(), as.end(), p) != as.end());
    }
  }
}

TEST_CASE("euclidean division and gcd") {
  CHECK(gcd(10, -2) == EisensteinInt{-2, 0});
  CHECK(gcd(7, 7) == EisensteinInt{7, 0});
  CHECK(gcd({5, 3}, 1) == EisensteinInt{1, 0});
  CHECK_THROWS_AS(gcd(0, 0), DomainError);
  CHECK_THROWS_AS(divmod(3, 0), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  for (int i = 0; i < 5000; ++i) {
    const EisensteinInt m{d(rng), d(rng)}, n{d(rng), d(rng)};
    if (n.is_zero()) continue;
    const auto [q, r] = divmod(m, n);
    REQUIRE(q * n + r == m);
    REQUIRE(3 * norm(r) <= norm(n));
  }

  // Brute-force divisor scan for small norms.
  std::vector<EisensteinInt> small;
  for_each_lattice_point(200, 1, 0, 1, 0, [&](const EisensteinInt& x) {
    if (!x.is_zero()) small.push_back(x);
  });
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int i = 0; i < 400; ++i) {
    const auto m = small[pick(rng)], n = small[pick(rng)];
    const auto g = gcd(m, n);
    REQUIRE(divides(g, m));
    REQUIRE(divides(g, n));
    std::int64_t best = 0;
    for (const auto& c : small) {
      if (divides(c, m) && divides(c, n)) {
        REQUIRE(divides(c, g));
        best = std::max(best, norm(c));
      }
    }
    REQUIRE(norm(g) == best);
  }
}

TEST_CASE("factorisation") {
  const auto f10 = factor(10);
  REQUIRE(f10.factors.size() == 2);
  CHECK(f10.unit == EisensteinInt{1, 0});
  CHECK(f10.factors[0].prime.value() == EisensteinInt{-2, 0});
  CHECK(f10.factors[1].prime.value() == EisensteinInt{-5, 0});
  CHECK(f10.factors[0].prime.kind() == PrimeKind::Inert);

  const auto f2 = factor(-2);
  CHECK(f2.unit == EisensteinInt{1, 0});
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].exponent == 1);

  CHECK(factor(1).factors.empty());
  CHECK_THROWS_AS(factor(0), DomainError);

  const auto f3 = factor(3);
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].prime.kind() == PrimeKind::Ramified);
  CHECK(f3.factors[0].exponent == 2);
  CHECK_FALSE(f3.coprime_to_three());

  const PrimeTable table(100000);
  std::size_t checked = 0;
  for_each_lattice_point(100000, 1, 0, 1, 0, [&](const EisensteinInt& x) {
    if (x.is_zero()) return;
    const auto f = factor(x, &table);
    REQUIRE(f.reassemble() == x);
    REQUIRE(is_unit(f.unit));
    for (std::size_t i = 1; i < f.factors.size(); ++i) {
      REQUIRE(canonical_less(f.factors[i - 1].prime.value(), f.factors[i].prime.value()));
    }
    ++checked;
  });
  CHECK(checked > 300000);
}

TEST_CASE("split-prime lifting agrees with the table") {
  const PrimeTable table(20000);
  for (std::int64_t p = 7; p <= 20000; p += 6) {
    if (!is_rational_prime(p)) continue;
    const auto pi = lift_split_prime(p);
    REQUIRE(norm(pi) == p);
    REQUIRE(is_primary(pi));
    const auto [x, y] = table.split_primes(p);
    REQUIRE(x == pi);
    REQUIRE(y == conjugate(pi));
  }
  CHECK_THROWS_AS(lift_split_prime(5), DomainError);
}

TEST_CASE("enumeration") {
  const auto four = enumerate_primary(4);
  CHECK(std::find(four.begin(), four.end(), EisensteinInt{1, 0}) != four.end());
  CHECK(std::find(four.begin(), four.end(), EisensteinInt{-2, 0}) != four.end());
  CHECK(enumerate_primary(0).empty());
  const auto primes3 = enumerate_primary(3, is_eisenstein_prime);
  CHECK(primes3.empty());

  // Exhaustive oracle: scan the box and test the congruence directly.
  const auto got = enumerate_primary(500);
  std::vector<EisensteinInt> want;
  for (std::int64_t a = -40; a <= 40; ++a) {
    for (std::int64_t b = -40; b <= 40; ++b) {
      const EisensteinInt x{a, b};
      const auto n = norm(x);
      if (n >= 1 && n <= 500 && is_primary(x)) want.push_back(x);
    }
  }
  std::sort(want.begin(), want.end(), CanonicalLess{});
  CHECK(got == want);
}

TEST_CASE("prime ideal count trend") {
  const auto primes = primary_primes(1000000);
  const double n = 1e6, expected = n / std::log(n);
  CHECK(std::abs(static_cast<double>(primes.size()) / expected - 1.0) < 0.2);
  for (const auto& p : primes) REQUIRE(is_primary(p.value()));
}

TEST_CASE("arithmetic functions") {
  CHECK(von_mangoldt(4) == doctest::Approx(std::log(4.0)));
  CHECK(von_mangoldt(10) == 0.0);
  CHECK(mobius(10) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(-2) == -1);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(-2) == 3);
  CHECK(euler_phi(4) == 12);
  CHECK(arithmetic_function(ArithmeticKind::Phi, 10) == 3.0 * 24.0);
  CHECK_THROWS_AS(mobius(0), DomainError);
  // phi_K(n) counts units of Z[w]/(n): compare against a gcd scan.
  for (const auto& n : enumerate_primary(60)) {
    std::int64_t count = 0;
    std::vector<EisensteinInt> res;
    for_each_lattice_point(4 * norm(n), 1, 0, 1, 0, [&](const EisensteinInt& x) { res.push_back(x); });
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const auto& x : res) {
      const auto r = divmod(x, n).remainder;
      if (!seen.insert({r.a, r.b}).second) continue;
      if (is_unit(gcd(r, n))) ++count;
    }
    REQUIRE(static_cast<std::int64_t>(seen.size()) == norm(n));
    REQUIRE(count == euler_phi(n));
  }
}
