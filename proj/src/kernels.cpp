// SPDX-License-Identifier: Apache-2.0
#include "cubic/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace cubic::kernels {

namespace scalar {

void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s[exps[i]] += w[i];
  out[0] = s[0];
  out[1] = s[1];
  out[2] = s[2];
}

void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]) {
  double s[8] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = exps[i];
    s[2 * e] += re[idx[i]];
    s[2 * e + 1] += im[idx[i]];
  }
  std::memcpy(out, s, 6 * sizeof(double));
}

void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im) {
  for (std::size_t j = 0; j < npts; ++j) {
    const double zr = z_re[j], zi = z_im[j];
    double ar = 0.0, ai = 0.0;
    for (std::size_t m = deg; m >= 1; --m) {
      const double tr = ar + c_re[m], ti = ai + c_im[m];
      ar = tr * zr - ti * zi;
      ai = tr * zi + ti * zr;
    }
    out_re[j] = ar;
    out_im[j] = ai;
  }
}

}  // namespace scalar

#ifndef CUBIC_HAVE_AVX2
namespace avx2 {
void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]) {
  scalar::char_bucket_sum(exps, w, n, out);
}
void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]) {
  scalar::gather_bucket_sum(exps, idx, n, re, im, out);
}
void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im) {
  scalar::poly_eval(c_re, c_im, deg, z_re, z_im, npts, out_re, out_im);
}
}  // namespace avx2
#endif

namespace {

SimdLevel detect() {
#if defined(CUBIC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

SimdLevel initial() {
  const SimdLevel best = detect();
  if (const char* env = std::getenv("CUBIC_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::Scalar;
  }
  return best;
}

std::atomic<SimdLevel>& current() {
  static std::atomic<SimdLevel> level{initial()};
  return level;
}

}  // namespace

SimdLevel detected_level() {
  static const SimdLevel d = detect();
  return d;
}

SimdLevel active_level() { return current().load(std::memory_order_relaxed); }

SimdLevel set_level(SimdLevel level) {
  if (level == SimdLevel::Avx2 && detected_level() != SimdLevel::Avx2) level = SimdLevel::Scalar;
  current().store(level);
  return level;
}

std::string level_name(SimdLevel level) { return level == SimdLevel::Avx2 ? "avx2" : "scalar"; }

void char_bucket_sum(const std::uint8_t* exps, const double* w, std::size_t n, double out[3]) {
  if (active_level() == SimdLevel::Avx2) return avx2::char_bucket_sum(exps, w, n, out);
  scalar::char_bucket_sum(exps, w, n, out);
}

void gather_bucket_sum(const std::uint8_t* exps, const std::int32_t* idx, std::size_t n, const double* re,
                       const double* im, double out[6]) {
  if (active_level() == SimdLevel::Avx2) return avx2::gather_bucket_sum(exps, idx, n, re, im, out);
  scalar::gather_bucket_sum(exps, idx, n, re, im, out);
}

void poly_eval(const double* c_re, const double* c_im, std::size_t deg, const double* z_re, const double* z_im,
               std::size_t npts, double* out_re, double* out_im) {
  if (active_level() == SimdLevel::Avx2) return avx2::poly_eval(c_re, c_im, deg, z_re, z_im, npts, out_re, out_im);
  scalar::poly_eval(c_re, c_im, deg, z_re, z_im, npts, out_re, out_im);
}

}  // namespace cubic::kernels
