// SPDX-License-Identifier: Apache-2.0
#include "cubic/special.hpp"

#include <cmath>
#include <stdexcept>

namespace cubic::special {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// B_{2k} / (2k (2k - 1)), k = 1..8.
constexpr double kStirling[] = {1.0 / 12.0,    -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
                                1.0 / 1188.0,  -691.0 / 360360.0,   1.0 / 156.0,  -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..7.
constexpr double kDigamma[] = {1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0,
                               1.0 / 12.0};

constexpr double kShiftTo = 10.0;

}  // namespace

cplx log_gamma(cplx z) {
  cplx correction = 0.0;
  while (z.real() < kShiftTo) {
    correction += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z, inv2 = inv * inv;
  cplx series = 0.0, p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series - correction;
}

cplx digamma(cplx z) {
  cplx correction = 0.0;
  while (z.real() < kShiftTo) {
    correction += 1.0 / z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z, inv2 = inv * inv;
  cplx series = 0.0, p = inv2;
  for (double c : kDigamma) {
    series += c * p;
    p *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - correction;
}

cplx gamma_lower_series(cplx s, cplx z) {
  cplx term = 1.0 / s, sum = term;
  const double zabs = std::abs(z);
  for (int n = 1; n < 100000; ++n) {
    term *= z / (s + static_cast<double>(n));
    sum += term;
    if (n > zabs && std::abs(term) <= 1e-17 * std::abs(sum)) {
      return std::exp(s * std::log(z) - z) * sum;
    }
  }
  throw std::runtime_error("gamma_lower_series: no convergence");
}

namespace {

// Legendre continued fraction for Gamma(s, z), modified Lentz iteration.
bool gamma_upper_cf(cplx s, cplx z, cplx& out) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 200000; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      out = std::exp(s * std::log(z) - z) * h;
      return true;
    }
  }
  return false;
}

}  // namespace

cplx gamma_upper(cplx s, cplx z) {
  const double zabs = std::abs(z);
  if (zabs == 0.0) return std::exp(log_gamma(s));
  if (zabs <= std::max(2.0, std::abs(s)) && zabs <= 60.0) {
    return std::exp(log_gamma(s)) - gamma_lower_series(s, z);
  }
  cplx out;
  if (gamma_upper_cf(s, z, out)) return out;
  throw std::runtime_error("gamma_upper: continued fraction did not converge");
}

}  // namespace cubic::special
