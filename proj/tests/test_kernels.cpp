// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cubic/kernels.hpp"

using namespace cubic::kernels;

TEST_CASE("dispatch reports a level") {
  const auto lvl = active_level();
  CHECK((lvl == SimdLevel::Scalar || lvl == SimdLevel::Avx2));
  MESSAGE("detected SIMD level: " << level_name(detected_level()));
}

TEST_CASE("vector kernels agree with the scalar reference") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> e(0, 3);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 4099u}) {
    std::vector<std::uint8_t> exps(n);
    std::vector<double> w(n), re(257), im(257);
    std::vector<std::int32_t> idx(n);
    for (auto& x : exps) x = static_cast<std::uint8_t>(e(rng));
    for (auto& x : w) x = u(rng);
    for (auto& x : re) x = u(rng);
    for (auto& x : im) x = u(rng);
    for (auto& x : idx) x = static_cast<std::int32_t>(rng() % 257);

    double a[3], b[3];
    scalar::char_bucket_sum(exps.data(), w.data(), n, a);
    avx2::char_bucket_sum(exps.data(), w.data(), n, b);
    for (int i = 0; i < 3; ++i) REQUIRE(std::abs(a[i] - b[i]) < 1e-12);

    double ga[6], gb[6];
    scalar::gather_bucket_sum(exps.data(), idx.data(), n, re.data(), im.data(), ga);
    avx2::gather_bucket_sum(exps.data(), idx.data(), n, re.data(), im.data(), gb);
    for (int i = 0; i < 6; ++i) REQUIRE(std::abs(ga[i] - gb[i]) < 1e-12);
  }

  const std::size_t deg = 300;
  std::vector<double> cr(deg + 1), ci(deg + 1);
  for (std::size_t m = 0; m <= deg; ++m) {
    cr[m] = u(rng);
    ci[m] = u(rng);
  }
  for (std::size_t npts : {1u, 4u, 7u, 13u}) {
    std::vector<double> zr(npts), zi(npts), ar(npts), ai(npts), br(npts), bi(npts);
    for (std::size_t j = 0; j < npts; ++j) {
      const double r = 0.5 + 0.49 * std::abs(u(rng)), t = 3 * u(rng);
      zr[j] = r * std::cos(t);
      zi[j] = r * std::sin(t);
    }
    scalar::poly_eval(cr.data(), ci.data(), deg, zr.data(), zi.data(), npts, ar.data(), ai.data());
    avx2::poly_eval(cr.data(), ci.data(), deg, zr.data(), zi.data(), npts, br.data(), bi.data());
    for (std::size_t j = 0; j < npts; ++j) {
      // Direct power sum as an independent check.
      std::complex<double> z(zr[j], zi[j]), zp = z, s = 0;
      for (std::size_t m = 1; m <= deg; ++m, zp *= z) s += std::complex<double>(cr[m], ci[m]) * zp;
      REQUIRE(std::abs(std::complex<double>(ar[j], ai[j]) - s) < 1e-10);
      REQUIRE(std::abs(br[j] - ar[j]) + std::abs(bi[j] - ai[j]) < 1e-12);
    }
  }
}

TEST_CASE("forcing the scalar path") {
  const auto before = active_level();
  CHECK(set_level(SimdLevel::Scalar) == SimdLevel::Scalar);
  CHECK(active_level() == SimdLevel::Scalar);
  set_level(before);
}
