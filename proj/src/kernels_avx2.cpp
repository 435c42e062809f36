// SPDX-License-Identifier: Apache-2.0
// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <cstring>

#include "cubic/kernels.hpp"

namespace cubic::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256i load_exps(const std::uint8_t* p) {
  std::int32_t raw;
  std::memcpy(&raw, p, 4);
  return _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(raw));
}

}  // namespace

void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]) {
  const __m256i k0 = _mm256_setzero_si256(), k1 = _mm256_set1_epi64x(1), k2 = _mm256_set1_epi64x(2);
  __m256d s0 = _mm256_setzero_pd(), s1 = s0, s2 = s0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i e = load_exps(exps + i);
    const __m256d v = _mm256_loadu_pd(w + i);
    s0 = _mm256_add_pd(s0, _mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k0)), v));
    s1 = _mm256_add_pd(s1, _mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k1)), v));
    s2 = _mm256_add_pd(s2, _mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k2)), v));
  }
  double t[3];
  scalar::char_bucket_sum(exps + i, w + i, n - i, t);
  out[0] = hsum(s0) + t[0];
  out[1] = hsum(s1) + t[1];
  out[2] = hsum(s2) + t[2];
}

void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]) {
  const __m256i k0 = _mm256_setzero_si256(), k1 = _mm256_set1_epi64x(1), k2 = _mm256_set1_epi64x(2);
  __m256d r0 = _mm256_setzero_pd(), r1 = r0, r2 = r0, i0 = r0, i1 = r0, i2 = r0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i e = load_exps(exps + i);
    const __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    const __m256d vr = _mm256_i32gather_pd(re, ix, 8);
    const __m256d vi = _mm256_i32gather_pd(im, ix, 8);
    const __m256d m0 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k0));
    const __m256d m1 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k1));
    const __m256d m2 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(e, k2));
    r0 = _mm256_add_pd(r0, _mm256_and_pd(m0, vr));
    i0 = _mm256_add_pd(i0, _mm256_and_pd(m0, vi));
    r1 = _mm256_add_pd(r1, _mm256_and_pd(m1, vr));
    i1 = _mm256_add_pd(i1, _mm256_and_pd(m1, vi));
    r2 = _mm256_add_pd(r2, _mm256_and_pd(m2, vr));
    i2 = _mm256_add_pd(i2, _mm256_and_pd(m2, vi));
  }
  double t[6];
  scalar::gather_bucket_sum(exps + i, idx + i, n - i, re, im, t);
  out[0] = hsum(r0) + t[0];
  out[1] = hsum(i0) + t[1];
  out[2] = hsum(r1) + t[2];
  out[3] = hsum(i1) + t[3];
  out[4] = hsum(r2) + t[4];
  out[5] = hsum(i2) + t[5];
}

void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im) {
  std::size_t j = 0;
  for (; j + 4 <= npts; j += 4) {
    const __m256d zr = _mm256_loadu_pd(z_re + j), zi = _mm256_loadu_pd(z_im + j);
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    for (std::size_t m = deg; m >= 1; --m) {
      const __m256d tr = _mm256_add_pd(ar, _mm256_set1_pd(c_re[m]));
      const __m256d ti = _mm256_add_pd(ai, _mm256_set1_pd(c_im[m]));
      ar = _mm256_fmsub_pd(tr, zr, _mm256_mul_pd(ti, zi));
      ai = _mm256_fmadd_pd(tr, zi, _mm256_mul_pd(ti, zr));
    }
    _mm256_storeu_pd(out_re + j, ar);
    _mm256_storeu_pd(out_im + j, ai);
  }
  scalar::poly_eval(c_re, c_im, deg, z_re + j, z_im + j, npts - j, out_re + j, out_im + j);
}

}  // namespace cubic::kernels::avx2
