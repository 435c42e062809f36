// SPDX-License-Identifier: Apache-2.0
#include "cubic/gauss.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "cubic/kernels.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

using i128 = __int128;

std::int64_t mod_pos(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// Extended gcd on 64-bit values: returns (g, s, t) with s x + t y = g >= 0.
struct Egcd {
  std::int64_t g, s, t;
};
Egcd egcd(std::int64_t x, std::int64_t y) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    const std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (x < 0) return {-x, -s0, -t0};
  return {x, s0, t0};
}

std::complex<double> times_omega(std::complex<double> z, int e) { return z * omega_power(e); }

}  // namespace

std::pair<std::int64_t, std::int64_t> trace_fraction(const EisensteinInt& num, const EisensteinInt& den) {
  if (den.is_zero()) throw DomainError("e_tr: zero denominator");
  const std::int64_t N = norm(den);
  const EisensteinInt dc = conjugate(den);
  // num * conj(den) = X + Y w, whose trace is 2X - Y.
  const i128 bd = static_cast<i128>(num.b) * dc.b;
  const i128 X = static_cast<i128>(num.a) * dc.a - bd;
  const i128 Y = static_cast<i128>(num.a) * dc.b + static_cast<i128>(num.b) * dc.a - bd;
  return {mod_pos(2 * X - Y, N), N};
}

std::complex<double> unit_root(std::int64_t t, std::int64_t N) {
  t %= N;
  if (t < 0) t += N;
  if (2 * t > N) t -= N;  // symmetric range keeps the argument small
  if (t == 0) return {1.0, 0.0};
  if (2 * t == N) return {-1.0, 0.0};
  if (4 * t == N) return {0.0, 1.0};
  if (4 * t == -N) return {0.0, -1.0};
  const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(N);
  return {std::cos(theta), std::sin(theta)};
}

std::complex<double> e_tr(const EisensteinInt& num, const EisensteinInt& den) {
  const auto [t, N] = trace_fraction(num, den);
  return unit_root(t, N);
}

ResidueSystem::ResidueSystem(const EisensteinInt& n) {
  if (n.is_zero()) throw DomainError("ResidueSystem: zero modulus");
  // n Z[w] is spanned by n = (c, d) and w n = (-d, c - d).
  const std::int64_t c = n.a, d = n.b;
  const auto e = egcd(d, c - d);
  C_ = e.g;
  A_ = norm(n) / C_;
  if (A_ * C_ != norm(n)) throw std::logic_error("ResidueSystem: Hermite basis has the wrong index");
}

GaussBruteForce::GaussBruteForce(const EisensteinInt& n, const PrimeTable* table) : n_(n), N_(norm(n)), residues_(n) {
  if (!is_primary(n)) throw DomainError("gauss_bruteforce: modulus must be primary");
  if (N_ > std::numeric_limits<std::int32_t>::max()) throw DomainError("gauss_bruteforce: modulus too large");
  const CubicCharacter chi(n, factor(n, table));
  exps_.resize(static_cast<std::size_t>(N_));
  for (std::int64_t i = 0; i < N_; ++i) exps_[i] = chi(residues_[i]).packed();
  root_re_.resize(static_cast<std::size_t>(N_));
  root_im_.resize(static_cast<std::size_t>(N_));
  for (std::int64_t t = 0; t < N_; ++t) {
    const auto z = unit_root(t, N_);
    root_re_[t] = z.real();
    root_im_[t] = z.imag();
  }
}

GaussSumValue GaussBruteForce::operator()(const EisensteinInt& k) const {
  // Tr(k r / n) = x Tr(k/n) + y Tr(w k/n) for r = x + y w.
  const std::int64_t T1 = trace_fraction(k, n_).first;
  const std::int64_t T2 = trace_fraction(kOmega * k, n_).first;
  scratch_.resize(static_cast<std::size_t>(N_));
  const std::int64_t A = residues_.A(), C = residues_.C();
  std::size_t i = 0;
  std::int64_t row = 0;
  for (std::int64_t y = 0; y < C; ++y) {
    std::int64_t t = row;
    for (std::int64_t x = 0; x < A; ++x) {
      scratch_[i++] = static_cast<std::int32_t>(t);
      t += T1;
      if (t >= N_) t -= N_;
    }
    row += T2;
    if (row >= N_) row -= N_;
  }
  double s[6];
  kernels::gather_bucket_sum(exps_.data(), scratch_.data(), exps_.size(), root_re_.data(), root_im_.data(), s);
  const std::complex<double> v = std::complex<double>(s[0], s[1]) + times_omega({s[2], s[3]}, 1) +
                                 times_omega({s[4], s[5]}, 2);
  return {v, N_, false};
}

GaussSumValue gauss_bruteforce(const EisensteinInt& k, const EisensteinInt& n, const PrimeTable* table) {
  return GaussBruteForce(n, table)(k);
}

GaussSumValue gauss_prime_power_split(const EisensteinInt& k, const EisensteinInt& p, int alpha) {
  if (alpha < 1) throw DomainError("gauss_prime_power_split: alpha must be at least 1");
  if (!is_primary(p) || !is_eisenstein_prime(p)) throw DomainError("gauss_prime_power_split: p must be a primary prime");
  const EisensteinInt n = power(p, static_cast<unsigned>(alpha));
  const EisensteinInt m = power(p, static_cast<unsigned>(alpha - 1));
  const ResidueSystem rp(p);
  const CubicCharacter chi(p);
  ComplexNeumaierSum first;
  for (std::int64_t i = 0; i < rp.size(); ++i) {
    const auto c = rp[i];
    const auto v = chi(c);
    if (v.is_zero()) continue;
    first.add(v.pow(alpha).to_complex() * e_tr(k * c, n));
  }
  // sum over j = x + y w, 0 <= x < A, 0 <= y < C, of e(k j / m) = (sum_x e(x T1)) (sum_y e(y T2)).
  const ResidueSystem rm(m);
  const auto [T1, Nm] = trace_fraction(k, m);
  const std::int64_t T2 = trace_fraction(kOmega * k, m).first;
  auto line = [Nm = Nm](std::int64_t T, std::int64_t count) {
    ComplexNeumaierSum s;
    std::int64_t t = 0;
    for (std::int64_t x = 0; x < count; ++x) {
      s.add(unit_root(t, Nm));
      t = (t + T) % Nm;
    }
    return s.value();
  };
  const std::complex<double> second = line(T1, rm.A()) * line(T2, rm.C());
  return {first.value() * second, norm(n), false};
}

std::complex<double> GaussSumCache::prime_sum(const EisensteinPrime& p) {
  const auto key = std::make_pair(p.value().a, p.value().b);
  {
    std::shared_lock lock(mu_);
    auto it = prime_.find(key);
    if (it != prime_.end()) return it->second;
  }
  const auto v = GaussBruteForce(p.value())(EisensteinInt{1, 0}).value;
  std::unique_lock lock(mu_);
  return prime_.emplace(key, v).first->second;
}

std::size_t GaussSumCache::size() const {
  std::shared_lock lock(mu_);
  return prime_.size();
}

namespace {

// g(k, p^alpha) for chi = (./p)^alpha. With k = p^b k', p not dividing k':
//   b >= alpha       : phi(p^alpha) if 3 | alpha, else 0
//   b = alpha - 1    : N(p)^b times -1, g(k', p) or conj g(k', p) as alpha = 0, 1, 2 (mod 3)
//   b <= alpha - 2   : 0
GaussSumValue prime_power_sum(const EisensteinInt& k, const EisensteinPrime& p, int alpha, GaussSumCache& cache) {
  const std::int64_t Np = p.norm();
  std::int64_t full = 1;
  for (int i = 0; i < alpha; ++i) full *= Np;
  const GaussSumValue zero{{0.0, 0.0}, full, true};

  int b = 0;
  EisensteinInt kp = k;
  if (k.is_zero()) {
    b = alpha;  // stands in for infinity
  } else {
    while (b < alpha && divides(p.value(), kp)) {
      kp = exact_quotient(kp, p.value());
      ++b;
    }
  }
  if (b >= alpha) {
    if (alpha % 3 != 0) return zero;
    return {{static_cast<double>(full / Np * (Np - 1)), 0.0}, full, false};
  }
  if (b <= alpha - 2) return zero;

  const double scale = static_cast<double>(full / Np);  // N(p)^b
  std::complex<double> h;
  switch (alpha % 3) {
    case 0:
      h = -1.0;
      break;
    case 1:
      h = cache.prime_sum(p) * symbol_prime(kp, p).conj().to_complex();
      break;
    default:
      h = std::conj(cache.prime_sum(p) * symbol_prime(kp, p).conj().to_complex());
      break;
  }
  return {scale * h, full, false};
}

}  // namespace

GaussSumValue gauss_factored(const EisensteinInt& k, const EisensteinInt& n, GaussSumCache* cache,
                             const PrimeTable* table) {
  if (!is_primary(n)) throw DomainError("gauss_factored: modulus must be primary");
  GaussSumCache local;
  GaussSumCache& c = cache ? *cache : local;
  const std::int64_t N = norm(n);
  const Factorization f = factor(n, table);

  std::complex<double> value{1.0, 0.0};
  int phase = 0;  // accumulated power of w from the twisting factors
  EisensteinInt done{1, 0};
  for (const auto& pp : f.factors) {
    const GaussSumValue part = prime_power_sum(k, pp.prime, pp.exponent, c);
    if (part.exact_zero) return {{0.0, 0.0}, N, true};
    const EisensteinInt q = power(pp.prime.value(), static_cast<unsigned>(pp.exponent));
    // g(k, M q) = chi_M(q) chi_q(M) g(k, M) g(k, q) for coprime M, q.
    const CubicSymbolValue chi_q_of_done = symbol_prime(done, pp.prime).pow(pp.exponent);
    CubicSymbolValue chi_done_of_q = CubicSymbolValue::omega_pow(0);
    for (const auto& prev : f.factors) {
      if (&prev == &pp) break;
      chi_done_of_q = chi_done_of_q * symbol_prime(q, prev.prime).pow(prev.exponent);
    }
    const auto twist = chi_q_of_done * chi_done_of_q;
    if (twist.is_zero()) throw std::logic_error("gauss_factored: factorisation parts are not coprime");
    phase += twist.exponent();
    value *= part.value;
    done = done * q;
  }
  return {value * omega_power(phase), N, false};
}

std::complex<double> root_number(const FamilyMember& f, GaussSumCache* cache) {
  const CubicCharacter chi(f.conductor, f.factorization);
  const auto g = gauss_factored({1, 0}, f.conductor, cache);
  return chi(kSqrtMinus3).to_complex() * g.value / std::sqrt(static_cast<double>(f.norm));
}

}  // namespace cubic
