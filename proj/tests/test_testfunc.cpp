// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cubic/testfunc.hpp"

using namespace cubic;

TEST_CASE("Fejer pair") {
  CHECK(fejer(0.0) == 1.0);
  CHECK(fejer_hat(0.0) == 1.0);
  CHECK(fejer_hat(2.0) == 0.0);
  CHECK(fejer_hat(-0.25) == 0.75);
  CHECK(fejer(1.0) == doctest::Approx(0.0).epsilon(1e-30));
  const auto pair = fejer_pair();
  for (double t = -50; t <= 50; t += 0.013) {
    REQUIRE(pair.h(t) >= 0.0);
    REQUIRE(pair.h(t) <= pair.decay_constant / (1 + t * t) + 1e-15);
  }
  // Numerical Fourier transform of h on [-W, W]; the neglected tail of the
  // non-oscillating part (1 / (2 pi^2 t^2)) is added back at xi = 0.
  const double W = 4000.0, dt = 0.01;
  for (int i = 0; i <= 20; ++i) {
    const double xi = -2.0 + 0.2 * i;
    double s = 0.5 * fejer(0.0) * dt;
    for (double t = dt; t <= W; t += dt) s += fejer(t) * std::cos(2 * M_PI * xi * t) * dt;
    s *= 2.0;
    if (std::abs(xi) < 1e-12) s += 1.0 / (M_PI * M_PI * W);
    INFO("xi = " << xi);
    CHECK(std::abs(s - fejer_hat(xi)) < 1e-4);
  }
}

TEST_CASE("window shape") {
  CHECK(SmoothWindow::phi(0.5) == 0.0);
  CHECK(SmoothWindow::phi(2.5) == 0.0);
  CHECK(SmoothWindow::phi(0.1) == 0.0);
  CHECK(SmoothWindow::phi(1.0) == 1.0);
  CHECK(SmoothWindow::phi(1.7) == 1.0);
  CHECK(SmoothWindow::phi(0.75) == doctest::Approx(0.5));
  for (double u = 0; u < 3; u += 0.001) {
    const double v = SmoothWindow::phi(u);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
  // Quadrature of Phi agrees with the closed form 3/2.
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(SmoothWindow::phi, 0.0, 3.0, 20, 1e-13);
  CHECK(std::abs(I - SmoothWindow::phi_integral()) < 1e-10);
}

TEST_CASE("transform at zero") {
  const double v = SmoothWindow::phi_hat0();
  CHECK(v > M_PI * 1.0 * 2.0 / std::sqrt(3.0));
  CHECK(v < M_PI * 2.0 * 2.0 / std::sqrt(3.0));
  CHECK(std::abs(v - std::sqrt(3.0) * M_PI) < 1e-14);
  // Monte-Carlo area oracle over the box |x|, |y| <= 2.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const int n = 10000000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = u(rng), y = u(rng);
    s += SmoothWindow::phi(x * x - x * y + y * y);
  }
  const double mc = 16.0 * s / n;
  CHECK(std::abs(mc - v) < 0.01);
}

namespace {

// Direct two-dimensional quadrature of int int Phi(x^2 - x y + y^2) e(-t y) dx dy;
// returns (re, im) with e(-t y) = exp(-4 pi i t y).
std::pair<double, double> phi_hat_2d(double t) {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [t](double y, bool imag) {
    const double disc = 2.5 - 0.75 * y * y;
    if (disc <= 0) return 0.0;
    // Break the x-range where N(x + w y) crosses 1/2, 1, 2 so every piece is smooth.
    std::vector<double> cuts{y / 2 - std::sqrt(disc), y / 2 + std::sqrt(disc)};
    for (double u : {0.5, 1.0, 2.0}) {
      const double d = u - 0.75 * y * y;
      if (d > 0) {
        cuts.push_back(y / 2 - std::sqrt(d));
        cuts.push_back(y / 2 + std::sqrt(d));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    const double w = imag ? -std::sin(4 * M_PI * t * y) : std::cos(4 * M_PI * t * y);
    double I = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      I += gauss_kronrod<double, 61>::integrate(
          [y](double x) { return SmoothWindow::phi(x * x - x * y + y * y); }, cuts[j], cuts[j + 1], 15, 1e-13);
    }
    return I * w;
  };
  const double ymax = std::sqrt(10.0 / 3.0);
  const double re = gauss_kronrod<double, 61>::integrate([&](double y) { return inner(y, false); }, -ymax, ymax, 20, 1e-11);
  const double im = gauss_kronrod<double, 61>::integrate([&](double y) { return inner(y, true); }, -ymax, ymax, 20, 1e-11);
  return {re, im};
}

}  // namespace

TEST_CASE("libm Bessel functions agree with Boost") {
  for (double x = 0.0; x < 4000.0; x += 0.7311) {
    REQUIRE(std::abs(::j0(x) - boost::math::cyl_bessel_j(0, x)) < 1e-14);
    REQUIRE(std::abs(::j1(x) - boost::math::cyl_bessel_j(1, x)) < 1e-14);
  }
}

TEST_CASE("transform against direct planar quadrature") {
  const auto& w = default_window();
  for (double t : {0.0, 0.13, 1.1}) {
    const auto [re, im] = phi_hat_2d(t);
    INFO("t = " << t << " radial " << w.phi_hat(t) << " planar " << re);
    CHECK(std::abs(w.phi_hat(t) - re) < 1e-7);
    CHECK(std::abs(im) < 1e-9);
  }
}

TEST_CASE("transform decay and interpolation") {
  const auto& w = default_window();
  // t^4 |Phi^(t)| stays bounded: the later half of [5, 50] never exceeds the earlier half.
  double early = 0.0, late = 0.0;
  for (double t = 5.0; t <= 50.0; t += 0.05) {
    const double v = std::abs(w.phi_hat(t)) * std::pow(t, 4);
    (t < 25.0 ? early : late) = std::max(t < 25.0 ? early : late, v);
  }
  MESSAGE("max t^4 |Phi^| on [5, 25): " << early << ", on [25, 50]: " << late);
  CHECK(late <= early);
  auto envelope = [&](double a, double b) {
    double m = 0.0;
    for (double t = a; t <= b; t += 0.01) m = std::max(m, std::abs(w.phi_hat(t)));
    return m;
  };
  const double slope = std::log(envelope(50, 100) / envelope(10, 20)) / std::log(75.0 / 15.0);
  MESSAGE("envelope decay exponent on [10, 100]: " << slope);
  CHECK(slope < -4.0);
  for (const auto& [K, C] : w.decay_constants()) {
    MESSAGE("C_" << K << " = " << C);
    for (double t = 1.0; t <= 100.0; t += 0.37) REQUIRE(std::abs(w.phi_hat(t)) <= C * std::pow(t, -K));
  }
  MESSAGE("grid interpolation error " << w.interpolation_error_bound());
  CHECK(w.interpolation_error_bound() < 1e-4);
  CHECK(std::abs(w.phi_hat_interp(0.123) - w.phi_hat(0.123)) <= w.interpolation_error_bound() * 10 + 1e-12);
}

TEST_CASE("Poisson summation") {
  const auto p = poisson_check({1, 0}, {0, 0}, 100.0);
  MESSAGE("q=1 r=0 M=100: lhs " << p.lhs << " rhs " << p.rhs << " residual " << p.residual << " dual terms " << p.rhs_terms);
  CHECK(p.residual < 1e-6);
  CHECK(std::abs(p.lhs - 100.0 * SmoothWindow::phi_hat0()) < 0.05 * p.lhs);
  // Tiny M: no lattice point reaches the window, and the dual side cancels to zero.
  const auto small = poisson_check({1, 0}, {0, 0}, 0.4);
  CHECK(small.lhs == 0.0);
  CHECK(std::abs(small.rhs) < 1e-6);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> d(-4, 4);
  std::uniform_real_distribution<double> logm(std::log(100.0), std::log(10000.0));
  int done = 0;
  while (done < 5) {
    const EisensteinInt q{d(rng), d(rng)}, r{d(rng), d(rng)};
    if (q.is_zero() || norm(q) > 25) continue;
    const double M = std::exp(logm(rng));
    const auto res = poisson_check(q, r, M);
    INFO("q " << q.to_string() << " r " << r.to_string() << " M " << M << " lhs " << res.lhs << " rhs " << res.rhs);
    CHECK(res.residual < 1e-6);
    ++done;
  }
  CHECK_THROWS_AS(poisson_check({0, 0}, {1, 0}, 10.0), DomainError);
}
