// SPDX-License-Identifier: Apache-2.0
//
// Complex special functions needed by the L-function code.
#pragma once

#include <complex>

namespace cubic::special {

using cplx = std::complex<double>;

/// log Gamma(z). Principal branch (continuous, real on the positive axis) for
/// Re z > 0; for Re z <= 0 some branch whose exponential is Gamma(z).
cplx log_gamma(cplx z);

/// psi(z) = Gamma'(z) / Gamma(z) for z away from the poles.
cplx digamma(cplx z);

/// Upper incomplete gamma Gamma(s, z) for Re z > 0 (or z > 0 real), s not a
/// non-positive integer. Relative accuracy around 1e-13 in the regimes used
/// here. Throws std::runtime_error if neither expansion converges.
cplx gamma_upper(cplx s, cplx z);

/// Lower incomplete gamma by its power series; accurate when |z| is not
/// large compared with |s|.
cplx gamma_lower_series(cplx s, cplx z);

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

}  // namespace cubic::special
