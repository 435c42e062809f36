// SPDX-License-Identifier: Apache-2.0
#include "cubic/dirichlet_poly.hpp"

#include <algorithm>
#include <cmath>

#include "cubic/kernels.hpp"
#include "cubic/parallel.hpp"
#include "cubic/testfunc.hpp"

namespace cubic {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multinomial(int k, const std::vector<int>& alphas) {
  std::uint64_t r = factorial(k);
  for (int a : alphas) r /= factorial(a);
  return r;
}

std::complex<double> from_buckets(const double s[3]) {
  return s[0] + s[1] * omega_power(1) + s[2] * omega_power(2);
}

}  // namespace

double weight_of_norm(double norm, double x) {
  if (!(x >= 3.0)) throw DomainError("weight: x must be at least 3");
  if (norm >= x) return 0.0;
  const double lx = std::log(x);
  return std::pow(norm, -1.0 / lx) * std::log(x / norm) / lx;
}

double weight(const EisensteinPrime& p, double x) { return weight_of_norm(static_cast<double>(p.norm()), x); }

double preset_length(double X) {
  const double lll = std::log(std::log(std::log(X)));
  if (!(X > std::exp(std::exp(1.0))) || !(lll > 0.0)) throw DomainError("preset_length: X must exceed e^e");
  return std::pow(X, (13.0 / 22.0) / lll);
}

WeightedPrimeSum::WeightedPrimeSum(double x) : x_(x), table_(static_cast<std::int64_t>(std::floor(x))) {
  if (!(x >= 3.0)) throw DomainError("WeightedPrimeSum: x must be at least 3");
  for (const auto& p : table_.primes()) {
    const double w = weight(p, x);
    w_.push_back(w);
    c_.push_back(w / std::sqrt(static_cast<double>(p.norm())));
  }
}

std::complex<double> WeightedPrimeSum::operator()(const EisensteinInt& f) const {
  thread_local std::vector<std::uint8_t> exps;
  table_.chi_all(f, exps);
  double s[3];
  kernels::char_bucket_sum(exps.data(), c_.data(), c_.size(), s);
  return from_buckets(s);
}

std::complex<double> WeightedPrimeSum::cached(const EisensteinInt& f) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
  }
  const auto v = (*this)(f);
  std::lock_guard lock(mu_);
  cache_.emplace(f, v);
  return v;
}

double WeightedPrimeSum::trivial_value() const {
  NeumaierSum s;
  for (double c : c_) s.add(c);
  return s.value();
}

std::complex<double> evaluate_P(const FamilyMember& f, double x) { return WeightedPrimeSum(x)(f.conductor); }

std::uint64_t a_coefficient(int k, const EisensteinInt& n, double x, const PrimeTable* table) {
  if (k < 0) throw DomainError("a_coefficient: k must be nonnegative");
  if (n.is_zero()) return 0;
  const Factorization fac = factor(n, table);
  if (!(fac.unit == EisensteinInt{1, 0})) return 0;
  std::vector<int> alphas;
  int total = 0;
  for (const auto& pp : fac.factors) {
    if (pp.prime.kind() == PrimeKind::Ramified) return 0;
    if (static_cast<double>(pp.prime.norm()) > x) return 0;
    alphas.push_back(pp.exponent);
    total += pp.exponent;
  }
  if (total != k) return 0;
  return multinomial(k, alphas);
}

double expansion_check(const FamilyMember& f, double x, int k) {
  if (k < 0 || k > 4) throw DomainError("expansion_check: k must be in [0, 4]");
  if (!(x <= 200.0)) throw DomainError("expansion_check: x must be at most 200");
  const WeightedPrimeSum P(x);
  const auto& primes = P.primes();
  std::vector<std::uint8_t> chi;
  P.character_values(f.conductor, chi);
  const std::complex<double> direct = std::pow(P(f.conductor), k);

  // Walk all multisets {i_1 <= ... <= i_k}; each is one n = prod p_i with
  // chi_f(n) = prod chi_f(p_i) and W(n) / sqrt(N(n)) = prod w(p_i) / sqrt(N(p_i)).
  ComplexNeumaierSum expansion;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  std::function<void(int, std::size_t)> walk = [&](int depth, std::size_t start) {
    if (depth == k) {
      std::vector<int> alphas;
      int e = 0;
      double mag = 1.0;
      bool zero = false;
      for (int i = 0; i < k; ++i) {
        const std::size_t pi = idx[static_cast<std::size_t>(i)];
        if (i == 0 || pi != idx[static_cast<std::size_t>(i - 1)]) alphas.push_back(1);
        else ++alphas.back();
        if (chi[pi] == 3) zero = true;
        e += chi[pi];
        mag *= P.coefficients()[pi];
      }
      if (!zero) expansion.add(static_cast<double>(multinomial(k, alphas)) * mag * omega_power(e));
      return;
    }
    for (std::size_t i = start; i < primes.size(); ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      walk(depth + 1, i);
    }
  };
  walk(0, 0);
  return std::abs(direct - expansion.value());
}

double zeta_K2() {
  // L(2, chi_-3) = sum_{m >= 0} 1/(3m+1)^2 - 1/(3m+2)^2; the pair terms are
  // positive and decreasing, about 2/(27 m^3), so the tail after M pairs is
  // below 1/(27 M^2) < 1e-14 for M = 2e6.
  static const double value = [] {
    NeumaierSum L;
    const int M = 2000000;
    for (int m = M - 1; m >= 0; --m) {
      const double a = 3.0 * m + 1.0, b = 3.0 * m + 2.0;
      L.add((b * b - a * a) / (a * a * b * b));
    }
    return M_PI * M_PI / 6.0 * L.value();
  }();
  return value;
}

double mertens_sum(double x) {
  if (!(x >= 3.0)) throw DomainError("mertens_sum: x must be at least 3");
  NeumaierSum s;
  for (const auto& p : primary_primes(static_cast<std::int64_t>(std::floor(x)))) {
    const double w = weight(p, x);
    s.add(w * w / (static_cast<double>(p.norm()) + 1.0));
  }
  return s.value();
}

std::vector<PSample> sweep_P(double X, double x, int threads) {
  const auto lo = static_cast<std::int64_t>(std::floor(0.5 * X));
  const auto hi = static_cast<std::int64_t>(std::ceil(2.5 * X));
  const PrimeTable table(std::max<std::int64_t>(hi, 2));
  const auto family = family_iter(lo, hi, &table);
  const WeightedPrimeSum P(x);
  auto samples = parallel_map(family.size(), threads, [&](std::size_t i) {
    const auto& f = family[i];
    return PSample{f.conductor, f.norm, SmoothWindow::phi(static_cast<double>(f.norm) / X), P(f.conductor)};
  });
  std::erase_if(samples, [](const PSample& s) { return s.phi == 0.0; });
  return samples;
}

namespace {

std::complex<double> ipow(std::complex<double> z, int k) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

void check_moment_guard(double X, int k, int j) {
  if (k < 0 || j < 0 || k > 3 || j > 3) throw DomainError("moment_sum: k and j must lie in [0, 3]");
  if (!(X > 0.0) || X > 1e7) throw DomainError("moment_sum: X must lie in (0, 1e7]");
}

double main_term(double X, int k, int j) {
  if (k != j) return 0.0;
  return static_cast<double>(factorial(k)) * X * SmoothWindow::phi_hat0() / (81.0 * zeta_K2()) *
         std::pow(std::log(std::log(X)), k);
}

MomentReport finish(MomentReport r) {
  r.relative_gap = std::abs(r.computed - r.main_term) / std::max(std::abs(r.main_term), 1.0);
  return r;
}

}  // namespace

MomentReport moment_from_samples(const std::vector<PSample>& samples, double X, int k, int j, double x) {
  check_moment_guard(X, k, j);
  ComplexNeumaierSum s;
  for (const auto& p : samples) s.add(ipow(p.P, k) * ipow(std::conj(p.P), j) * p.phi);
  MomentReport r{X, x, k, j, s.value(), main_term(X, k, j), 0.0, static_cast<std::int64_t>(samples.size())};
  return finish(r);
}

MomentReport moment_sum(double X, int k, int j, double x, int threads, const std::optional<ZeroSumWeight>& zero_sum) {
  check_moment_guard(X, k, j);
  const auto samples = sweep_P(X, x, threads);
  if (!zero_sum) return moment_from_samples(samples, X, k, j, x);
  const PrimeTable table(static_cast<std::int64_t>(std::ceil(2.5 * X)) + 1);
  const auto z = parallel_map(samples.size(), threads, [&](std::size_t i) {
    return zero_sum->value(make_family_member(samples[i].conductor, &table));
  });
  ComplexNeumaierSum s;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    s.add(ipow(p.P, k) * ipow(std::conj(p.P), j) * p.phi * z[i]);
  }
  MomentReport r{X, x, k, j, s.value(), main_term(X, k, j), 0.0, static_cast<std::int64_t>(samples.size())};
  r.main_term *= zero_sum->h_hat0 * std::log(X) / zero_sum->L;
  return finish(r);
}

RealMoments real_moments(const std::vector<PSample>& samples, int kmax) {
  std::vector<NeumaierSum> re(static_cast<std::size_t>(kmax) + 1), ab(static_cast<std::size_t>(kmax) + 1);
  for (const auto& p : samples) {
    double r = p.phi, a = p.phi;
    for (int k = 0; k <= kmax; ++k) {
      re[static_cast<std::size_t>(k)].add(r);
      ab[static_cast<std::size_t>(k)].add(a);
      r *= p.P.real();
      a *= std::abs(p.P);
    }
  }
  RealMoments out;
  for (int k = 0; k <= kmax; ++k) {
    out.re.push_back(re[static_cast<std::size_t>(k)].value());
    out.abs.push_back(ab[static_cast<std::size_t>(k)].value());
  }
  return out;
}

}  // namespace cubic
