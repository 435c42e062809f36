// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "cubic/dirichlet_poly.hpp"
#include "cubic/testfunc.hpp"

using namespace cubic;

TEST_CASE("prime weights") {
  const double x = 1000.0;
  CHECK(weight_of_norm(x, x) == 0.0);
  CHECK(weight_of_norm(2 * x, x) == 0.0);
  CHECK(weight_of_norm(std::sqrt(x), x) == doctest::Approx(std::exp(-0.5) / 2).epsilon(1e-14));
  double prev = 2.0;
  for (double n = 2.0; n <= x; n += 0.37) {
    const double w = weight_of_norm(n, x);
    REQUIRE(w >= 0.0);
    REQUIRE(w <= 1.0);
    REQUIRE(w < prev);
    prev = w;
  }
  CHECK_THROWS_AS(weight_of_norm(2.0, 2.5), DomainError);
  CHECK(preset_length(1e6) == doctest::Approx(std::pow(1e6, (13.0 / 22.0) / std::log(std::log(std::log(1e6))))));
  CHECK_THROWS_AS(preset_length(10.0), DomainError);
}

TEST_CASE("P agrees with the literal character sum") {
  const PrimeTable table(20000);
  const double x = 150.0;
  const WeightedPrimeSum P(x);
  for (const auto& f : family_iter(0, 20000, &table)) {
    if (f.norm % 7 != 1) continue;
    std::complex<double> direct = 0.0;
    double bound = 0.0;
    for (const auto& p : primary_primes(150)) {
      const double c = weight(p, x) / std::sqrt(static_cast<double>(p.norm()));
      const auto chi = symbol(p.value(), f.conductor, &table);
      if (!chi.is_zero()) direct += c * chi.to_complex();
      bound += c;
    }
    const auto v = P(f.conductor);
    REQUIRE(std::abs(v - direct) < 1e-12);
    REQUIRE(std::abs(v) <= P.trivial_value() + 1e-12);
    REQUIRE(std::abs(P.trivial_value() - bound) < 1e-12);
    REQUIRE(P.cached(f.conductor) == v);
    REQUIRE(evaluate_P(f, x) == v);
  }
}

TEST_CASE("conjugation symmetry of P") {
  const PrimeTable table(5000);
  const double x = 300.0;
  const WeightedPrimeSum P(x);
  for (const auto& f : family_iter(0, 5000, &table)) {
    // The conjugate conductor: the prime set is closed under conjugation.
    const auto fbar = conjugate(f.conductor);
    REQUIRE(std::abs(P(fbar) - std::conj(P(f.conductor))) < 1e-12);
    // The conjugate character chi_f^2 = chi_{f^2}, evaluated from scratch.
    const auto f2 = f.conductor * f.conductor;
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < P.primes().size(); ++i) {
      const auto chi = symbol(P.primes()[i].value(), f2, &table);
      if (!chi.is_zero()) s += P.coefficients()[i] * chi.to_complex();
    }
    REQUIRE(std::abs(s - std::conj(P(f.conductor))) < 1e-12);
  }
}

TEST_CASE("multinomial coefficients") {
  const auto p1 = EisensteinPrime::from({-1, 3});  // norm 13
  const auto p2 = EisensteinPrime::from({2, 0});   // inert, norm 4
  const auto p3 = EisensteinPrime::from({5, 0});
  CHECK(a_coefficient(2, p1.value() * p2.value(), 100) == 2);
  CHECK(a_coefficient(1, p1.value(), 100) == 1);
  CHECK(a_coefficient(2, power(p1.value(), 3), 100) == 0);
  CHECK(a_coefficient(3, power(p1.value(), 3), 100) == 1);
  CHECK(a_coefficient(3, p1.value() * p1.value() * p3.value(), 100) == 3);
  CHECK(a_coefficient(4, p1.value() * p1.value() * p2.value() * p3.value(), 100) == 12);
  CHECK(a_coefficient(0, {1, 0}, 100) == 1);
  CHECK(a_coefficient(1, -p1.value(), 100) == 0);
  CHECK(a_coefficient(1, p3.value(), 20) == 0);
  CHECK(a_coefficient(2, p1.value() * kRamifiedPrime, 100) == 0);
  CHECK_THROWS_AS(a_coefficient(-1, {1, 0}, 10), DomainError);

  // Multinomial theorem: summing a_k(n) over every product of k primes of
  // norm <= x gives r^k, r the number of such primes.
  const double x = 40.0;
  const auto primes = primary_primes(40);
  const auto r = static_cast<std::uint64_t>(primes.size());
  for (int k = 1; k <= 3; ++k) {
    std::uint64_t total = 0;
    std::function<void(int, std::size_t, EisensteinInt)> walk = [&](int depth, std::size_t start, EisensteinInt n) {
      if (depth == k) {
        total += a_coefficient(k, n, x);
        return;
      }
      for (std::size_t i = start; i < primes.size(); ++i) walk(depth + 1, i, n * primes[i].value());
    };
    walk(0, 0, {1, 0});
    CHECK(total == static_cast<std::uint64_t>(std::pow(r, k)));
  }
}

TEST_CASE("power expansion identity") {
  const auto f10 = make_family_member({10, 0});
  CHECK(expansion_check(f10, 100.0, 0) == 0.0);
  CHECK(expansion_check(f10, 100.0, 1) < 1e-14);
  CHECK(expansion_check(f10, 100.0, 3) < 1e-9);
  CHECK_THROWS_AS(expansion_check(f10, 201.0, 2), DomainError);
  CHECK_THROWS_AS(expansion_check(f10, 100.0, 5), DomainError);
  const PrimeTable table(100000);
  const auto fam = family_iter(0, 100000, &table);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
  std::uniform_int_distribution<int> kd(2, 4);
  std::uniform_real_distribution<double> xd(3.0, 200.0);
  for (int i = 0; i < 6; ++i) {
    const auto& f = fam[pick(rng)];
    const int k = kd(rng);
    const double x = xd(rng);
    INFO("f " << f.conductor.to_string() << " k " << k << " x " << x);
    CHECK(expansion_check(f, x, k) < 1e-9);
  }
}

TEST_CASE("zeta_K(2)") {
  const double trig = (boost::math::trigamma(1.0 / 3.0) - boost::math::trigamma(2.0 / 3.0)) / 9.0;
  CHECK(std::abs(zeta_K2() - M_PI * M_PI / 6.0 * trig) < 1e-12);
  CHECK(std::abs(zeta_K2() - 1.28519095548414940) < 1e-13);  // mpmath, 30 digits
}

TEST_CASE("Mertens-type sum") {
  CHECK(mertens_sum(3.0) == 0.0);
  CHECK(mertens_sum(4.5) > 0.0);  // the inert prime 2 alone
  double prev = 0.0;
  for (double x = 3.0; x < 2000.0; x *= 1.3) {
    const double m = mertens_sum(x);
    REQUIRE(m >= prev);
    prev = m;
  }
  const double diff = mertens_sum(1e6) - mertens_sum(1e3);
  const double target = std::log(std::log(1e6)) - std::log(std::log(1e3));
  MESSAGE("Mertens difference " << diff << " vs log log difference " << target);
  CHECK(std::abs(diff - target) < 0.5);
}

TEST_CASE("family moments") {
  const double X = 2e4, x = 300.0;
  const auto s1 = sweep_P(X, x, 1);
  const auto s4 = sweep_P(X, x, 4);
  REQUIRE(s1.size() == s4.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    REQUIRE(s1[i].conductor == s4[i].conductor);
    REQUIRE(s1[i].P == s4[i].P);
    REQUIRE(s1[i].phi > 0.0);
  }
  const auto count = moment_from_samples(s1, X, 0, 0, x);
  double phi_total = 0.0;
  for (const auto& s : s1) phi_total += s.phi;
  CHECK(count.computed.real() == doctest::Approx(phi_total).epsilon(1e-12));
  CHECK(count.family_count == static_cast<std::int64_t>(s1.size()));
  CHECK(count.main_term == doctest::Approx(X * SmoothWindow::phi_hat0() / (81.0 * zeta_K2())));
  const auto m10 = moment_sum(X, 1, 0, x, 2);
  CHECK(m10.main_term == 0.0);
  CHECK(std::abs(m10.computed) <= std::pow(X, 0.6));
  const auto m11 = moment_sum(X, 1, 1, x, 2);
  CHECK(std::abs(m11.computed.imag()) < 1e-9 * m11.computed.real());
  CHECK(m11.relative_gap == doctest::Approx(std::abs(m11.computed - m11.main_term) / m11.main_term));
  const auto rm = real_moments(s1, 4);
  CHECK(rm.re[0] == doctest::Approx(phi_total).epsilon(1e-12));
  CHECK(rm.abs[2] == doctest::Approx(m11.computed.real()).epsilon(1e-12));
  // With a constant zero-sum weight the moment scales and the main term picks up h^(0) log X / L.
  const ZeroSumWeight z{[](const FamilyMember&) { return 2.0; }, 4.0, 1.0};
  const auto mz = moment_sum(X, 1, 1, x, 2, z);
  CHECK(mz.computed.real() == doctest::Approx(2.0 * m11.computed.real()).epsilon(1e-12));
  CHECK(mz.main_term == doctest::Approx(m11.main_term * std::log(X) / 4.0));
  CHECK_THROWS_AS(moment_sum(X, 4, 0, x, 1), DomainError);
  CHECK_THROWS_AS(moment_sum(2e7, 1, 1, x, 1), DomainError);
}
