// SPDX-License-Identifier: Apache-2.0
#include "cubic/density.hpp"

#include <cmath>

#include "cubic/dirichlet_poly.hpp"
#include "cubic/lfunc.hpp"
#include "doctest.h"

using namespace cubic;

TEST_CASE("classify_ell ignores units and lambda") {
  CHECK(classify_ell({1, 0}).kind == EllClass::Cube);
  CHECK(classify_ell({-8, 0}).kind == EllClass::Cube);
  CHECK(classify_ell({-8, 0}).euler_factor == doctest::Approx(1.0 / 1.25));
  CHECK(classify_ell({0, 1}).kind == EllClass::Cube);   // w
  CHECK(classify_ell({1, -1}).kind == EllClass::Cube);  // lambda
  const auto q = classify_ell({-2, 0});
  CHECK(q.kind == EllClass::PrimeTimesCube);
  CHECK(q.q_exponent == 1);
  CHECK(classify_ell({4, 0}).q_exponent == 2);
  CHECK(classify_ell({-14, 0}).kind == EllClass::Other);  // -2 times both primes above 7
  CHECK_THROWS_AS(classify_ell({0, 0}), DomainError);
}

TEST_CASE("twisted count: cube twists only rescale the count") {
  const double X = 2e4;
  const auto one = twisted_count(X, {1, 0}, 2);
  const auto lam = twisted_count(X, {1, -1}, 2);
  const auto w = twisted_count(X, {0, 1}, 2);
  CHECK(one.computed == lam.computed);
  CHECK(one.computed == w.computed);
  CHECK(std::abs(one.computed.imag()) == 0.0);
  // 8 = (-2)^3: members divisible by 2 drop out, the rest see chi = 1.
  const auto eight = twisted_count(X, {8, 0}, 2);
  CHECK(eight.main_term == doctest::Approx(one.main_term / 1.25));
  CHECK(eight.computed.real() < one.computed.real());
  CHECK(eight.computed.real() > 0.7 * one.computed.real());
  // The count exceeds the stated main term by the lambda Euler factor 9/8 up to lower-order terms.
  CHECK(one.computed.real() / one.main_term == doctest::Approx(9.0 / 8.0).epsilon(0.03));
}

TEST_CASE("twisted count: non-cube twists cancel") {
  const double X = 2e4;
  const auto one = twisted_count(X, {1, 0}, 1);
  for (EisensteinInt ell : {EisensteinInt{-2, 0}, EisensteinInt{4, 0}, EisensteinInt{3, 1}, EisensteinInt{-14, 0}}) {
    const auto r = twisted_count(X, ell, 1);
    CHECK(std::abs(r.computed) < std::pow(X, 0.55));
    CHECK(std::abs(r.computed) < 0.1 * one.computed.real());
  }
  // A conjugate twist conjugates the sum.
  const auto a = twisted_count(X, {3, 1}, 1), b = twisted_count(X, conjugate({3, 1}), 1);
  CHECK(std::abs(a.computed - std::conj(b.computed)) < 1e-6);
}

TEST_CASE("twisted count guards and thread independence") {
  CHECK_THROWS_AS(twisted_count(100.0, {0, 0}, 1), DomainError);
  CHECK_THROWS_AS(twisted_count(10.0, {1000, 0}, 1), DomainError);
  const auto a = twisted_count(5e3, {-2, 0}, 1), b = twisted_count(5e3, {-2, 0}, 3);
  CHECK(a.computed == b.computed);
}

TEST_CASE("C_{3,h}: finite sum") {
  const auto pair = fejer_pair();
  CHECK(c3h(pair, 3.0 * std::log(4.0) - 1e-9).value == 0.0);
  CHECK(c3h(pair, 3.0 * std::log(4.0) - 1e-9).terms == 0);
  // e^4 = 54.6: prime powers of norm 4, 7, 7, 13, 13, 16, 19, 19, 25, 31, 31, 37, 37, 43, 43, 49, 49.
  const auto c12 = c3h(pair, 12.0);
  CHECK(c12.terms == 17);
  // Term by term from the list above.
  double expect = 0.0;
  const std::pair<double, double> qs[] = {{4, 4},   {7, 7},   {7, 7},   {13, 13}, {13, 13}, {16, 4},
                                          {19, 19}, {19, 19}, {25, 25}, {31, 31}, {31, 31}, {37, 37},
                                          {37, 37}, {43, 43}, {43, 43}, {49, 7},  {49, 7}};
  for (const auto& [nq, np] : qs) {
    expect += std::log(np) / std::pow(nq, 1.5) / (1.0 + 1.0 / np) * fejer_hat(3.0 * std::log(nq) / 12.0);
  }
  CHECK(c12.value == doctest::Approx(expect).epsilon(1e-13));
  CHECK(c12.value == doctest::Approx(0.259763236535).epsilon(1e-10));
  double prev = 0.0;
  for (double L = 1.0; L <= 14.0; L += 0.25) {
    const double v = c3h(pair, L).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(c3h(pair, 0.5), DomainError);
}

TEST_CASE("zero-sum surrogate against located zeros for f = 10, L = 4") {
  const auto pair = fejer_pair();
  const auto f = make_family_member({10, 0});
  const auto r = explicit_formula_check(f, pair, 4.0, 30.0);
  CHECK(std::abs(zero_sum_surrogate(f, pair, 4.0) - r.zero_side) < 1e-2);
  CHECK(zero_sum_surrogate(f, pair, 4.0) > -1e-2);
  // Small L: the archimedean term dominates and scales like log N / L.
  const auto g = family_iter(2000, 4000)[0];
  const double a = zero_sum_surrogate(g, pair, 1.05), b = zero_sum_surrogate(g, pair, 1.0 * 2.1);
  CHECK(a == doctest::Approx(2.1 / 1.05 * b).epsilon(0.25));
  CHECK_THROWS_AS(zero_sum_surrogate(f, pair, 20.0), DomainError);
}

TEST_CASE("one-level density: routes agree on a small window") {
  const auto pair = fejer_pair();
  const auto ps = one_level_density(400.0, 3.0, {1, 0}, DensityRoute::PrimeSums, pair, 2);
  const auto zs = one_level_density(400.0, 3.0, {1, 0}, DensityRoute::Zeros, pair, 2, 30.0);
  REQUIRE(ps.family_count == zs.family_count);
  CHECK(zs.certified);
  CHECK(std::abs(ps.computed - zs.computed) < 1e-2 * ps.weight_sum);
  CHECK(ps.hypothesis_met);
  CHECK(ps.ell_class == EllClass::Cube);
  CHECK(ps.c3h == 0.0);
}

TEST_CASE("one-level density: guards and twisted windows") {
  const auto pair = fejer_pair();
  CHECK_THROWS_AS(one_level_density(2e4, 3.0, {1, 0}, DensityRoute::Zeros, pair, 1), DomainError);
  CHECK_THROWS_AS(one_level_density(10.0, 3.0, {1, 0}, DensityRoute::PrimeSums, pair, 1), DomainError);
  CHECK_THROWS_AS(one_level_density(1e6, 11.0, {1, 0}, DensityRoute::PrimeSums, pair, 1), DomainError);
  const auto outside = one_level_density(1e3, 3.0, {1, 0}, DensityRoute::PrimeSums, pair, 1);
  // With ell = 1 the route guard already implies the hypothesis; N(ell) = 4 breaks it here.
  CHECK_FALSE(one_level_density(50.0, 3.0, {-2, 0}, DensityRoute::PrimeSums, pair, 1).hypothesis_met);
  CHECK(outside.hypothesis_met);
  // Prime times cube and the q-damped bound with slack 3; both sub-cases.
  for (EisensteinInt ell : {EisensteinInt{-2, 0}, EisensteinInt{4, 0}, EisensteinInt{-2 * 64, 0}}) {
    const auto r = one_level_density(1e5, 3.0, ell, DensityRoute::PrimeSums, pair, 1);
    CHECK(r.ell_class == EllClass::PrimeTimesCube);
    CHECK(std::abs(std::complex<double>(r.computed, r.computed_imag)) <= 3.0 * r.main_term);
  }
  const auto same = one_level_density(1e4, 3.0, {-2, 0}, DensityRoute::PrimeSums, pair, 3);
  CHECK(same.computed == one_level_density(1e4, 3.0, {-2, 0}, DensityRoute::PrimeSums, pair, 1).computed);
}

TEST_CASE("D^T grows linearly in log X") {
  const auto pair = fejer_pair();
  const double L = 3.0;
  double xs[3], ys[3];
  int i = 0;
  for (double X : {1e4, 1e5, 1e6}) {
    const auto r = one_level_density(X, L, {1, 0}, DensityRoute::PrimeSums, pair, 2);
    xs[i] = std::log(X);
    ys[i] = r.computed * L / X;
    ++i;
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int j = 0; j < 3; ++j) {
    sxy += (xs[j] - mx) * (ys[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
  }
  const double slope = sxy / sxx;
  const double target = SmoothWindow::phi_hat0() / (81.0 * zeta_K2());
  CHECK(slope == doctest::Approx(target).epsilon(0.25));
}
