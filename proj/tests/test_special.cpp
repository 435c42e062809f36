// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <complex>

#include "cubic/special.hpp"

using namespace cubic::special;

#include "data/special_refs.inc"

TEST_CASE("log gamma and digamma against high-precision references") {
  for (const auto& r : kLogGammaRefs) {
    INFO("z = " << r.z);
    CHECK(std::abs(log_gamma(r.z) - r.value) < 1e-12 * std::max(1.0, std::abs(r.value)));
  }
  for (const auto& r : kDigammaRefs) {
    INFO("z = " << r.z);
    CHECK(std::abs(digamma(r.z) - r.value) < 1e-12 * std::max(1.0, std::abs(r.value)));
  }
  CHECK(std::abs(digamma(1.0) + kEulerGamma) < 1e-14);
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
}

TEST_CASE("upper incomplete gamma against high-precision references") {
  double worst = 0.0;
  for (const auto& r : kGammaUpperRefs) {
    const auto got = gamma_upper(r.s, r.z);
    const double err = std::abs(got - r.value) / std::abs(r.value);
    INFO("s = " << r.s << " z = " << r.z << " got " << got << " want " << r.value);
    CHECK(err < 1e-10);
    worst = std::max(worst, err);
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("incomplete gamma identities") {
  // Gamma(1, z) = exp(-z); Gamma(s+1, z) = s Gamma(s, z) + z^s e^{-z}.
  for (double r : {0.1, 1.0, 5.0, 30.0}) {
    for (double phi : {0.0, 0.7, -1.4}) {
      const cplx z = std::polar(r, phi);
      CHECK(std::abs(gamma_upper(1.0, z) - std::exp(-z)) < 1e-12 * std::abs(std::exp(-z)));
      const cplx s(0.5, 3.0);
      const cplx lhs = gamma_upper(s + 1.0, z);
      const cplx rhs = s * gamma_upper(s, z) + std::exp(s * std::log(z) - z);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
    }
  }
}
