// SPDX-License-Identifier: Apache-2.0
#include "cubic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cubic/dirichlet_poly.hpp"
#include "cubic/lfunc.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

struct Weighted {
  double value;
  double weight;
};

// Histogram over [-4, 4] in steps of 1/4 plus two open tails.
std::vector<double> default_edges() {
  std::vector<double> e;
  for (int i = -16; i <= 16; ++i) e.push_back(0.25 * i);
  return e;
}

void fill(DistReport& r, std::vector<Weighted> s, double alpha, double beta) {
  r.alpha = alpha;
  r.beta = beta;
  r.psi_value = psi(alpha, beta);
  r.edges = default_edges();
  r.bins.assign(r.edges.size() + 1, 0.0);
  r.gaussian_reference.clear();
  r.gaussian_reference.push_back(normal_cdf(r.edges.front()));
  for (std::size_t i = 0; i + 1 < r.edges.size(); ++i) r.gaussian_reference.push_back(psi(r.edges[i], r.edges[i + 1]));
  r.gaussian_reference.push_back(1.0 - normal_cdf(r.edges.back()));
  r.moments.assign(5, 0.0);
  if (s.empty()) return;

  NeumaierSum total;
  for (const auto& w : s) total.add(w.weight);
  const double W = total.value();
  std::vector<NeumaierSum> bins(r.bins.size()), mom(5);
  NeumaierSum inside;
  for (const auto& w : s) {
    const auto k = static_cast<std::size_t>(std::upper_bound(r.edges.begin(), r.edges.end(), w.value) - r.edges.begin());
    bins[k].add(w.weight);
    if (w.value > alpha && w.value < beta) inside.add(w.weight);
    double p = w.weight;
    for (int j = 0; j <= 4; ++j, p *= w.value) mom[static_cast<std::size_t>(j)].add(p);
  }
  for (std::size_t k = 0; k < bins.size(); ++k) r.bins[k] = bins[k].value() / W;
  for (std::size_t j = 0; j < mom.size(); ++j) r.moments[j] = mom[j].value() / W;
  r.fraction = inside.value() / W;

  // Kolmogorov-Smirnov distance of the weighted empirical CDF.
  std::stable_sort(s.begin(), s.end(), [](const Weighted& a, const Weighted& b) { return a.value < b.value; });
  double acc = 0.0, ks = 0.0;
  for (std::size_t i = 0; i < s.size();) {
    const double v = s[i].value;
    const double before = acc / W;
    for (; i < s.size() && s[i].value == v; ++i) acc += s[i].weight;
    const double F = normal_cdf(v);
    ks = std::max({ks, std::abs(before - F), std::abs(acc / W - F)});
  }
  r.ks_distance = std::min(ks, 1.0);
}

double loglog(double v) { return std::log(std::log(v)); }

}  // namespace

double normal_moment(int k, double sigma2) {
  if (k < 0) throw DomainError("normal_moment: k must be nonnegative");
  if (k % 2 == 1) return 0.0;
  double df = 1.0;
  for (int j = k - 1; j > 1; j -= 2) df *= j;
  return df * std::pow(sigma2, k / 2);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double psi(double alpha, double beta) {
  if (!(alpha < beta)) throw DomainError("psi: needs alpha < beta");
  const double r = 1.0 / std::sqrt(2.0);
  // Work in the tail that avoids cancellation.
  if (alpha >= 0.0) return 0.5 * (std::erfc(alpha * r) - std::erfc(beta * r));
  if (beta <= 0.0) return 0.5 * (std::erfc(-beta * r) - std::erfc(-alpha * r));
  return 0.5 * (std::erf(beta * r) - std::erf(alpha * r));
}

DistReport distribution_P(double X, double x, double alpha, double beta, int threads) {
  if (!(X > 100.0)) throw DomainError("distribution_P: X must exceed 100");
  const auto samples = sweep_P(X, x, threads);
  if (samples.empty()) throw DomainError("distribution_P: empty family window");
  DistReport r;
  r.X = X;
  r.sample_count = static_cast<std::int64_t>(samples.size());
  const double scale = std::sqrt(loglog(X));
  std::vector<Weighted> s, alt;
  for (const auto& p : samples) {
    s.push_back({p.P.real() / scale, p.phi});
    alt.push_back({p.P.real() / std::sqrt(loglog(static_cast<double>(p.norm))), p.phi});
  }
  DistReport other;
  fill(other, alt, alpha, beta);
  fill(r, s, alpha, beta);
  r.fraction_alt = other.fraction;
  return r;
}

DistReport distribution_logL(double X_cap, double x, double alpha, double beta, int threads) {
  if (!(X_cap > 0.0) || X_cap > 1e4) throw DomainError("distribution_logL: X_cap must lie in (0, 1e4]");
  const auto fam = family_iter(0, static_cast<std::int64_t>(std::floor(X_cap)));
  if (fam.empty()) throw DomainError("distribution_logL: no family members below X_cap");
  const WeightedPrimeSum P(x);
  struct Row {
    double absL = 0.0;
    bool vanishing = false;
    double residual = 0.0;
  };
  const auto rows = parallel_map(fam.size(), threads, [&](std::size_t i) {
    GaussSumCache cache;
    const auto cv = central_value(fam[i], &cache);
    Row row{std::abs(cv.L), cv.vanishing, 0.0};
    if (!cv.vanishing) row.residual = std::log(row.absL) - P(fam[i].conductor).real();
    return row;
  });

  DistReport r;
  r.X = X_cap;
  r.sample_count = static_cast<std::int64_t>(fam.size());
  std::vector<Weighted> s, alt;
  NeumaierSum res, res2;
  std::map<EisensteinInt, double, CanonicalLess> by_conductor;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    by_conductor[fam[i].conductor] = rows[i].absL;
    if (rows[i].vanishing) {
      ++r.vanishing_count;
      continue;
    }
    const double l = std::log(rows[i].absL);
    s.push_back({l / std::sqrt(loglog(static_cast<double>(fam[i].norm))), 1.0});
    alt.push_back({l / std::sqrt(loglog(X_cap)), 1.0});
    res.add(rows[i].residual);
    res2.add(rows[i].residual * rows[i].residual);
  }
  for (const auto& [f, a] : by_conductor) {
    const auto it = by_conductor.find(conjugate(f));
    if (it != by_conductor.end()) r.conjugate_mismatch = std::max(r.conjugate_mismatch, std::abs(a - it->second));
  }
  const auto n = static_cast<double>(s.size());
  r.nonvanishing_fraction = n / static_cast<double>(fam.size());
  if (!s.empty()) {
    r.residual_mean = res.value() / n;
    r.residual_sd = std::sqrt(std::max(0.0, res2.value() / n - r.residual_mean * r.residual_mean));
  }
  DistReport other;
  fill(other, alt, alpha, beta);
  fill(r, s, alpha, beta);
  r.fraction_alt = other.fraction;
  r.floor = 2.0 / 13.0 * r.psi_value;
  r.floor_shortfall = std::max(0.0, r.floor - r.fraction);
  return r;
}

}  // namespace cubic
