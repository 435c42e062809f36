// SPDX-License-Identifier: Apache-2.0
//
// Hot inner loops with a portable scalar reference and an AVX2/FMA variant.
// The variant is picked once at startup from CPUID; CUBIC_SIMD=scalar in the
// environment forces the reference path.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace cubic::kernels {

enum class SimdLevel { Scalar, Avx2 };

/// The level in use. Fixed for the lifetime of the process unless a test
/// calls set_level().
SimdLevel active_level();
/// Best level this CPU and build support.
SimdLevel detected_level();
/// Overrides the dispatch (tests only). Requesting Avx2 on an unsupported
/// machine falls back to Scalar; the level actually set is returned.
SimdLevel set_level(SimdLevel level);
std::string level_name(SimdLevel level);

/// Per-bucket sums of weights by packed character value:
/// out[e] = sum of w[i] over i with exps[i] == e, e in {0,1,2}; exps[i] == 3 is skipped.
void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]);

/// Bucketed gather: out[2e], out[2e+1] = sum over i with exps[i] == e of
/// (re[idx[i]], im[idx[i]]).
void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]);

/// Horner evaluation of p(z) = sum_{m=1..deg} c_m z^m at npts points.
/// Coefficients are c_re[m], c_im[m] for m = 0..deg (c_0 is ignored).
void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im);

namespace scalar {
void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]);
void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]);
void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im);
}  // namespace scalar

namespace avx2 {
void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]);
void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]);
void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im);
}  // namespace avx2

}  // namespace cubic::kernels
