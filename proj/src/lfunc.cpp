// SPDX-License-Identifier: Apache-2.0
#include "cubic/lfunc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "cubic/dirichlet_poly.hpp"
#include "cubic/kernels.hpp"
#include "cubic/parallel.hpp"
#include "cubic/special.hpp"

namespace cubic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Terms are dropped once exp(-m Re(y) / Q) falls below e^-40.
constexpr double kDecay = 40.0;

double q_of_norm(std::int64_t norm) { return std::sqrt(3.0 * static_cast<double>(norm)) / kTwoPi; }

cplx log_gamma_factor(double Q, cplx s) { return s * std::log(Q) + special::log_gamma(s); }

// Twenty-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
  GaussRule() {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& a = G::abscissa();
    const auto& b = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      x.push_back(a[i]);
      w.push_back(b[i]);
      if (a[i] != 0.0) {
        x.push_back(-a[i]);
        w.push_back(b[i]);
      }
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule r;
  return r;
}

// The theta integral on the ray arg y = phi:
//   Lambda(s) = tau^s int_0^U theta(tau e^u) e^{us} du + eps tau^{s-1} int_0^U conj(theta(tau e^u)) e^{u(1-s)} du,
// using conj(theta(tau e^u)) = theta_bar(e^u / tau) for |tau| = 1. theta is sampled once
// at composite Gauss-Legendre nodes; every s then costs one pass over the nodes.
class ThetaRay {
 public:
  ThetaRay(const LFunctionData& d, double phi, double t_abs_max) : phi_(phi), eps_(d.root_number) {
    const double cphi = std::cos(phi);
    const double U = std::log(kDecay * d.Q / cphi) + 0.5;
    const double fmax = t_abs_max + kDecay * std::tan(std::abs(phi)) + kDecay;
    const int panels = std::max(8, static_cast<int>(std::ceil(U * fmax / kTwoPi)));
    const auto& rule = gauss_rule();
    std::vector<double> cre(d.coefficients.size()), cim(d.coefficients.size());
    for (std::size_t m = 0; m < d.coefficients.size(); ++m) {
      cre[m] = d.coefficients[m].real();
      cim[m] = d.coefficients[m].imag();
    }
    const cplx tau = std::polar(1.0, phi);
    for (int p = 0; p < panels; ++p) {
      const double lo = U * p / panels, hi = U * (p + 1) / panels;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.x[i];
        const double eu = std::exp(u);
        const cplx z = std::exp(-tau * eu / d.Q);
        const auto deg = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(d.cutoff), std::ceil(kDecay * d.Q / (eu * cphi)) + 1.0));
        double tr = 0.0, ti = 0.0;
        const double zr = z.real(), zi = z.imag();
        kernels::poly_eval(cre.data(), cim.data(), deg, &zr, &zi, 1, &tr, &ti);
        u_.push_back(u);
        w_.push_back(0.5 * (hi - lo) * rule.w[i]);
        theta_.emplace_back(tr, ti);
      }
    }
  }

  double phi() const { return phi_; }

  cplx lambda(cplx s) const {
    cplx a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < u_.size(); ++j) {
      a += w_[j] * theta_[j] * std::exp(u_[j] * s);
      b += w_[j] * std::conj(theta_[j]) * std::exp(u_[j] * (1.0 - s));
    }
    const cplx itau(0.0, phi_);
    return std::exp(itau * s) * a + eps_ * std::exp(itau * (s - 1.0)) * b;
  }

  // Lambda(sigma + i(t0 + k h)) for k = 0..n-1, with the oscillating factors
  // advanced by multiplication and reseeded every 64 steps.
  void lambda_grid(double sigma, double t0, double h, std::size_t n, std::vector<cplx>& out) const {
    out.resize(n);
    const std::size_t J = u_.size();
    std::vector<cplx> a(J), b(J), r(J);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = t0 + static_cast<double>(k) * h;
      if (k % 64 == 0) {
        for (std::size_t j = 0; j < J; ++j) {
          a[j] = w_[j] * theta_[j] * std::exp(cplx(u_[j] * sigma, u_[j] * t));
          b[j] = w_[j] * std::conj(theta_[j]) * std::exp(cplx(u_[j] * (1.0 - sigma), -u_[j] * t));
          r[j] = std::polar(1.0, u_[j] * h);
        }
      }
      cplx sa = 0.0, sb = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        sa += a[j];
        sb += b[j];
        a[j] *= r[j];
        b[j] *= std::conj(r[j]);
      }
      const cplx s(sigma, t), itau(0.0, phi_);
      out[k] = std::exp(itau * s) * sa + eps_ * std::exp(itau * (s - 1.0)) * sb;
    }
  }

 private:
  double phi_;
  cplx eps_;
  std::vector<double> u_, w_;
  std::vector<cplx> theta_;
};

double z_from_lambda(const LFunctionData& d, cplx lam, double t, cplx eps_inv_sqrt) {
  const cplx s(0.5, t);
  return (eps_inv_sqrt * lam).real() / std::exp(log_gamma_factor(d.Q, s).real());
}

}  // namespace

double rotation_angle(double t) {
  const double a = std::abs(t);
  if (a <= kRotation / (M_PI / 2.0)) return 0.0;
  const double phi = M_PI / 2.0 - kRotation / a;
  return t < 0 ? -phi : phi;
}

std::int64_t default_cutoff(std::int64_t norm) {
  return static_cast<std::int64_t>(std::ceil(8.0 * std::sqrt(3.0 * static_cast<double>(norm))));
}

std::int64_t cutoff_for_height(std::int64_t norm, double T) {
  const double c = std::cos(rotation_angle(std::abs(T)));
  // The mirrored side of fe_residual uses a split 1.3 times closer to the origin.
  const double need = 1.3 * kDecay * q_of_norm(norm) / c;
  return std::max(default_cutoff(norm), static_cast<std::int64_t>(std::ceil(need)));
}

LFunctionData dirichlet_coefficients(const FamilyMember& f, std::int64_t cutoff, GaussSumCache* cache) {
  if (cutoff < 1) throw DomainError("dirichlet_coefficients: cutoff must be positive");
  LFunctionData d;
  d.conductor = f;
  d.cutoff = cutoff;
  d.Q = q_of_norm(f.norm);
  d.root_number = root_number(f, cache);
  d.coefficients.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
  const CubicCharacter chi(f.conductor, f.factorization);
  const CubicSymbolValue chi_lambda = chi(kRamifiedPrime);
  // Exponent sums per norm: cnt[m][e] counts ideals of norm m with chi = w^e.
  std::vector<std::array<std::int32_t, 3>> cnt(static_cast<std::size_t>(cutoff) + 1, {0, 0, 0});
  for (const auto& n : enumerate_primary(cutoff)) {
    const CubicSymbolValue v = chi(n);
    if (v.is_zero()) continue;
    std::int64_t m = norm(n);
    CubicSymbolValue lam_pow = CubicSymbolValue::omega_pow(0);
    while (m <= cutoff) {
      if (!lam_pow.is_zero()) ++cnt[static_cast<std::size_t>(m)][static_cast<std::size_t>((lam_pow * v).exponent())];
      m *= 3;
      lam_pow = lam_pow * chi_lambda;
    }
  }
  for (std::size_t m = 1; m < cnt.size(); ++m) {
    const auto& c = cnt[m];
    d.coefficients[m] = static_cast<double>(c[0]) + static_cast<double>(c[1]) * omega_power(1) +
                        static_cast<double>(c[2]) * omega_power(2);
  }
  return d;
}

double gamma_factor_abs(const LFunctionData& data, cplx s) { return std::exp(log_gamma_factor(data.Q, s).real()); }

cplx lambda_value(const LFunctionData& d, cplx s, double split_scale) {
  const double phi = rotation_angle(s.imag());
  const cplx tau = split_scale * std::polar(1.0, phi);
  const double Q = d.Q;
  const cplx s1 = 1.0 - s;
  ComplexNeumaierSum A, B;
  cplx lastA = 0.0, lastB = 0.0;
  for (std::int64_t m = 1; m <= d.cutoff; ++m) {
    const cplx c = d.coefficients[static_cast<std::size_t>(m)];
    if (c == 0.0) continue;
    const double md = static_cast<double>(m);
    const double lqm = std::log(Q / md);
    lastA = c * std::exp(s * lqm) * special::gamma_upper(s, md * tau / Q);
    lastB = std::conj(c) * std::exp(s1 * lqm) * special::gamma_upper(s1, md / (tau * Q));
    A.add(lastA);
    B.add(lastB);
  }
  // Neglected terms decay geometrically with ratio exp(-Re(y)/Q) from the last one kept;
  // a factor 10 covers the multiplicity of ideals per norm.
  const double ra = std::exp(-std::cos(phi) * split_scale / Q), rb = std::exp(-std::cos(phi) / (split_scale * Q));
  const double tail = 10.0 * (std::abs(lastA) * ra / (1.0 - ra) + std::abs(lastB) * rb / (1.0 - rb));
  if (tail > 1e-8 * gamma_factor_abs(d, s)) {
    throw DomainError("lambda_value: cutoff " + std::to_string(d.cutoff) + " too small for s = (" +
                      std::to_string(s.real()) + ", " + std::to_string(s.imag()) + "); use cutoff_for_height");
  }
  return A.value() + d.root_number * B.value();
}

double fe_residual(const LFunctionData& d, cplx s) {
  const cplx left = lambda_value(d, s, 1.0);
  const cplx right = lambda_value(d, 1.0 - std::conj(s), 1.3);
  return std::abs(left - d.root_number * std::conj(right)) / gamma_factor_abs(d, s);
}

std::vector<cplx> lambda_theta(const LFunctionData& d, double phi, const std::vector<cplx>& s) {
  double tmax = 0.0;
  for (const auto& z : s) tmax = std::max(tmax, std::abs(z.imag()));
  const ThetaRay ray(d, phi, tmax);
  std::vector<cplx> out;
  out.reserve(s.size());
  for (const auto& z : s) out.push_back(ray.lambda(z));
  return out;
}

CentralValue central_value(const LFunctionData& d) {
  CentralValue out;
  const double scale = std::sqrt(d.Q * M_PI);  // Q^{1/2} Gamma(1/2)
  out.L = lambda_value(d, 0.5) / scale;
  out.L_theta = lambda_theta(d, 0.0, {cplx(0.5, 0.0)})[0] / scale;
  out.fe_residual = fe_residual(d, 0.5);
  out.vanishing = std::abs(out.L) < 1e-8;
  return out;
}

CentralValue central_value(const FamilyMember& f, GaussSumCache* cache) {
  return central_value(dirichlet_coefficients(f, default_cutoff(f.norm), cache));
}

double hardy_z(const LFunctionData& d, double t) {
  const cplx lam = lambda_value(d, cplx(0.5, t));
  return z_from_lambda(d, lam, t, 1.0 / std::sqrt(d.root_number));
}

namespace {

// Rays covering |t| <= T: angle 0 up to 2c/pi, then blocks growing by 1.5 with
// the angle of each block's lower end, so the cancellation stays below e^{1.5c}.
std::vector<std::pair<double, double>> height_blocks(double T) {
  std::vector<std::pair<double, double>> b;
  double lo = 0.0, hi = std::min(T, kRotation / (M_PI / 2.0));
  b.emplace_back(lo, hi);
  while (hi < T) {
    lo = hi;
    hi = std::min(T, 1.5 * hi);
    b.emplace_back(lo, hi);
  }
  return b;
}

struct Scan {
  std::vector<double> zeros;
  long count = 0;
};

Scan scan_zeros(const LFunctionData& d, double T, double h, const cplx eps_inv_sqrt,
                std::map<std::pair<int, std::size_t>, std::unique_ptr<ThetaRay>>& rays) {
  const auto blocks = height_blocks(T);
  Scan out;
  for (int sign : {-1, 1}) {
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto [lo, hi] = blocks[bi];
      auto& ray = rays[{sign, bi}];
      if (!ray) ray = std::make_unique<ThetaRay>(d, sign * rotation_angle(lo), hi);
      auto Z = [&](double t) { return z_from_lambda(d, ray->lambda(cplx(0.5, t)), t, eps_inv_sqrt); };
      // Grid points in this block: |t| in [lo, hi], walked outward from the origin.
      const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
      const double step = (hi - lo) / static_cast<double>(n - 1);
      std::vector<cplx> lam;
      ray->lambda_grid(0.5, sign * lo, sign * step, n, lam);
      std::vector<double> z(n);
      for (std::size_t k = 0; k < n; ++k) z[k] = z_from_lambda(d, lam[k], sign * (lo + k * step), eps_inv_sqrt);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        double a = sign * (lo + k * step), b = sign * (lo + (k + 1) * step);
        double za = z[k], zb = z[k + 1];
        if (za == 0.0) {
          if (k > 0 || (bi == 0 && sign == 1)) out.zeros.push_back(a);
          continue;
        }
        if ((za < 0) == (zb < 0) || zb == 0.0) continue;
        for (int it = 0; it < 60 && std::abs(b - a) > 1e-9; ++it) {
          const double mid = 0.5 * (a + b);
          const double zm = Z(mid);
          if ((zm < 0) == (za < 0)) {
            a = mid;
            za = zm;
          } else {
            b = mid;
          }
        }
        out.zeros.push_back(0.5 * (a + b));
      }
    }
  }
  std::sort(out.zeros.begin(), out.zeros.end());
  out.zeros.erase(std::unique(out.zeros.begin(), out.zeros.end(), [](double x, double y) { return std::abs(x - y) < 1e-7; }),
                  out.zeros.end());
  return out;
}

// Continuous arg L(sigma + iT) from sigma = 3 (where |L - 1| < 0.07) down to 1/2.
double arg_L_half(const LFunctionData& d, const ThetaRay& ray, double T) {
  auto L = [&](double sigma) {
    const cplx s(sigma, T);
    return ray.lambda(s) / std::exp(log_gamma_factor(d.Q, s));
  };
  double sigma = 3.0;
  cplx prev = L(sigma);
  double arg = std::arg(prev);
  double step = 0.05;
  while (sigma > 0.5) {
    const double next = std::max(0.5, sigma - step);
    const cplx v = L(next);
    const double delta = std::arg(v / prev);
    if (std::abs(delta) > M_PI / 8 && step > 1e-5) {
      step /= 2;
      continue;
    }
    arg += delta;
    prev = v;
    sigma = next;
    if (std::abs(delta) < M_PI / 32) step = std::min(0.05, step * 2);
  }
  return arg;
}

}  // namespace

long zero_count(const LFunctionData& d, double T) {
  const ThetaRay up(d, rotation_angle(T), T), down(d, rotation_angle(-T), T);
  const cplx sp(0.5, T), sm(0.5, -T);
  const double theta = log_gamma_factor(d.Q, sp).imag() - log_gamma_factor(d.Q, sm).imag();
  const double total = (theta + arg_L_half(d, up, T) - arg_L_half(d, down, -T)) / M_PI;
  const long n = std::lround(total);
  if (std::abs(total - static_cast<double>(n)) > 0.2) return -1;
  return n;
}

ZeroList find_zeros(const LFunctionData& d, double T) {
  if (!(T > 0.0) || T > 100.0) throw DomainError("find_zeros: T must lie in (0, 100]");
  if (d.cutoff < cutoff_for_height(d.conductor.norm, T)) {
    throw DomainError("find_zeros: cutoff below cutoff_for_height(N, T)");
  }
  ZeroList out;
  out.conductor = d.conductor;
  out.T_max = T;
  out.argument_count = zero_count(d, T);
  const cplx eps_inv_sqrt = 1.0 / std::sqrt(d.root_number);
  std::map<std::pair<int, std::size_t>, std::unique_ptr<ThetaRay>> rays;
  double h = 0.05;
  for (int attempt = 0; attempt < 3; ++attempt, h /= 2) {
    Scan s = scan_zeros(d, T, h, eps_inv_sqrt, rays);
    out.ordinates = std::move(s.zeros);
    out.spacing = h;
    if (out.argument_count >= 0 && static_cast<long>(out.ordinates.size()) == out.argument_count) {
      out.certified = true;
      break;
    }
  }
  return out;
}

double zero_density(std::int64_t norm, double t) {
  return (std::log(3.0 * static_cast<double>(norm) / (4.0 * M_PI * M_PI)) +
          2.0 * special::digamma(cplx(0.5, t)).real()) /
         kTwoPi;
}

namespace {

// (1/pi) int_T^inf h(tL/2pi) g(t) dt for g = 1 and g = Re psi(1/2 + it), cached per (L, T).
// Quadrature runs to t_max = 2e4 on panels of half an oscillation; beyond that
// h is replaced by its running mean tail_mean / u^2 and g by its asymptotic
// form, which leaves an error of order 1 / t_max^2.
struct ArchParts {
  double flat = 0.0;     // (1/pi) int_T^inf h
  double digamma = 0.0;  // (1/pi) int_T^inf h * Re psi
};

ArchParts arch_parts(const TestFunctionPair& pair, double L, double T) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, double>, ArchParts> memo;
  const auto key = std::make_tuple(L, T, pair.h(0.37));
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  using boost::math::quadrature::gauss_kronrod;
  const double tmax = 2e4;
  const double panel = M_PI / L;
  NeumaierSum flat, dig;
  for (double a = T; a < tmax; a += panel) {
    const double b = std::min(tmax, a + panel);
    flat.add(gauss_kronrod<double, 31>::integrate([&](double t) { return pair.h(t * L / kTwoPi); }, a, b, 0, 0));
    dig.add(gauss_kronrod<double, 31>::integrate(
        [&](double t) { return pair.h(t * L / kTwoPi) * special::digamma(cplx(0.5, t)).real(); }, a, b, 0, 0));
  }
  // Tail: h(u) ~ m / u^2 with u = tL / 2pi, so h ~ m (2pi/L)^2 / t^2, and Re psi(1/2+it) ~ log t.
  const double k = pair.tail_mean * (kTwoPi / L) * (kTwoPi / L);
  flat.add(k / tmax);
  dig.add(k * (std::log(tmax) + 1.0) / tmax);
  ArchParts p{flat.value() / M_PI, dig.value() / M_PI};
  std::lock_guard lock(mu);
  memo.emplace(key, p);
  return p;
}

}  // namespace

double archimedean_term(std::int64_t norm, const TestFunctionPair& pair, double L, double T) {
  const ArchParts p = arch_parts(pair, L, T);
  // (1/2pi) int_{|t|>T} h (A + 2 Re psi) = (1/pi) int_T^inf h (A + 2 Re psi) by evenness;
  // flat and digamma already carry the 1/pi.
  const double A = std::log(3.0 * static_cast<double>(norm) / (4.0 * M_PI * M_PI));
  return A * p.flat + 2.0 * p.digamma;
}

double prime_term(const FamilyMember& f, const TestFunctionPair& pair, double L) {
  const double emax = std::exp(L);
  const CubicCharacter chi(f.conductor, f.factorization);
  std::vector<EisensteinInt> primes{kRamifiedPrime};
  for (const auto& p : primary_primes(static_cast<std::int64_t>(std::floor(emax)))) primes.push_back(p.value());
  NeumaierSum s;
  for (const auto& p : primes) {
    const CubicSymbolValue v = chi(p);
    if (v.is_zero()) continue;
    const double np = static_cast<double>(norm(p));
    const double lp = std::log(np);
    double nk = np;
    for (int k = 1; nk <= emax; ++k, nk *= np) {
      const double hh = pair.h_hat(k * lp / L);
      if (hh == 0.0) continue;
      s.add(lp / std::sqrt(nk) * 2.0 * v.pow(k).to_complex().real() * hh);
    }
  }
  return s.value() / L;
}

double zero_tail_bound(std::int64_t norm, double L, double T) {
  // Boundary term of int_{|t|>T} h dS on both sides with h(tL/2pi) <= 4 / (tL)^2.
  const double smax = 1.0 + std::log(q_of_norm(norm) * (T + 3.0));
  return 2.0 * 4.0 / (T * T * L * L) * smax;
}

ExplicitFormulaResult explicit_formula_check(const FamilyMember& f, const TestFunctionPair& pair, double L, double T,
                                             GaussSumCache* cache) {
  ExplicitFormulaResult r;
  r.tail_bound = zero_tail_bound(f.norm, L, T);
  if (r.tail_bound > 1e-2) throw DomainError("explicit_formula_check: zero tail estimate above 1e-2; raise T");
  const auto data = dirichlet_coefficients(f, cutoff_for_height(f.norm, T), cache);
  const ZeroList zeros = find_zeros(data, T);
  NeumaierSum located;
  for (double g : zeros.ordinates) located.add(pair.h(g * L / kTwoPi));
  r.located = located.value();
  r.smooth_tail = archimedean_term(f.norm, pair, L, T);
  r.zero_side = r.located + r.smooth_tail;
  r.archimedean = archimedean_term(f.norm, pair, L, 0.0);
  r.primes = prime_term(f, pair, L);
  r.prime_side = r.archimedean - r.primes;
  r.residual = std::abs(r.zero_side - r.prime_side);
  r.zero_count = zeros.ordinates.size();
  r.certified = zeros.certified;
  return r;
}

double prop1_residual(const FamilyMember& f, double x, GaussSumCache* cache) {
  const CentralValue cv = central_value(f, cache);
  if (cv.vanishing) throw DomainError("prop1_residual: L(1/2) vanishes numerically");
  return std::log(std::abs(cv.L)) - evaluate_P(f, x).real();
}

}  // namespace cubic
