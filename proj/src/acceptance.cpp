// SPDX-License-Identifier: Apache-2.0
#include "cubic/acceptance.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "cubic/density.hpp"
#include "cubic/dirichlet_poly.hpp"
#include "cubic/gauss.hpp"
#include "cubic/lfunc.hpp"
#include "cubic/parallel.hpp"
#include "cubic/stats.hpp"
#include "cubic/testfunc.hpp"

namespace cubic {

namespace {

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Portable draws from mt19937_64 (the engine's output sequence is fixed by the standard).
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }
double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t count, std::mt19937_64& rng) {
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + draw_index(rng, pool.size() - i)]);
  pool.resize(count);
  return pool;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string runtime_note(double s, double limit) { return "runtime " + num(s, 3) + " s (limit " + num(limit) + " s)"; }

Verdict gauss_oracle(const AcceptanceOptions& o) {
  Timer timer;
  const std::int64_t nmax = o.quick ? 300 : 2000;
  std::vector<EisensteinInt> ks;
  for_each_lattice_point(50, 1, 0, 1, 0, [&](const EisensteinInt& k) { ks.push_back(k); });
  const auto ns = enumerate_primary(nmax);
  GaussSumCache cache;
  struct Row {
    double worst = 0.0;  // max |factored - brute| / sqrt N(n)
    int zero_mismatch = 0;
  };
  const auto rows = parallel_map(ns.size(), o.threads, [&](std::size_t i) {
    const auto& n = ns[i];
    const GaussBruteForce bf(n);
    const double root = std::sqrt(static_cast<double>(norm(n)));
    Row r;
    for (const auto& k : ks) {
      const auto want = bf(k).value;
      const auto got = gauss_factored(k, n, &cache);
      r.worst = std::max(r.worst, std::abs(got.value - want) / root);
      if (got.exact_zero != (std::abs(want) <= 1e-6 * root)) ++r.zero_mismatch;
    }
    return r;
  });
  double worst = 0.0;
  int mismatches = 0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.worst);
    mismatches += r.zero_mismatch;
  }
  const double t = timer.seconds();
  const double limit = 120.0;
  return {worst <= 1e-6 && mismatches == 0 && t <= limit,
          std::to_string(ns.size()) + " moduli (norm <= " + std::to_string(nmax) + ") x " + std::to_string(ks.size()) +
              " twists; max |err|/sqrt N = " + num(worst) + " (tol 1e-6); structural-zero mismatches " +
              std::to_string(mismatches) + "; " + runtime_note(t, limit)};
}

Verdict prime_power_vanishing(const AcceptanceOptions& o) {
  Timer timer;
  const std::int64_t pmax = o.quick ? 50 : 200;
  const EisensteinInt twists[] = {{1, 0}, {0, 1}, {4, 3}, {-5, 2}};
  const auto primes = primary_primes(pmax);
  struct Row {
    double worst = 0.0;  // max |g| / N(p)^alpha
    double brute_gap = 0.0;
    int cases = 0, brute_cases = 0;
  };
  const auto rows = parallel_map(primes.size(), o.threads, [&](std::size_t i) {
    const auto& p = primes[i];
    Row r;
    for (int alpha = 2; alpha <= 4; ++alpha) {
      const double nq = std::pow(static_cast<double>(p.norm()), alpha);
      const auto q = power(p.value(), static_cast<unsigned>(alpha));
      std::unique_ptr<GaussBruteForce> bf;
      if (nq <= 2e6) bf = std::make_unique<GaussBruteForce>(q);
      for (const auto& k : twists) {
        if (divides(p.value(), k)) continue;
        const auto g = gauss_prime_power_split(k, p.value(), alpha).value;
        r.worst = std::max(r.worst, std::abs(g) / nq);
        ++r.cases;
        if (bf) {
          r.brute_gap = std::max(r.brute_gap, std::abs((*bf)(k).value - g) / nq);
          ++r.brute_cases;
        }
      }
    }
    return r;
  });
  Row all;
  for (const auto& r : rows) {
    all.worst = std::max(all.worst, r.worst);
    all.brute_gap = std::max(all.brute_gap, r.brute_gap);
    all.cases += r.cases;
    all.brute_cases += r.brute_cases;
  }
  const double t = timer.seconds();
  const double limit = 60.0;
  return {all.worst < 1e-9 && all.brute_gap < 1e-9 && t <= limit,
          std::to_string(all.cases) + " cases, N(p) <= " + std::to_string(pmax) +
              ", alpha 2..4; max |g|/N(p)^alpha = " + num(all.worst) + " (tol 1e-9); brute-force cross-check on " +
              std::to_string(all.brute_cases) + " cases, max gap " + num(all.brute_gap) + "; " + runtime_note(t, limit)};
}

Verdict reciprocity(const AcceptanceOptions& o) {
  const std::int64_t nmax = o.quick ? 150 : 500;
  const auto all = enumerate_primary(nmax);
  const auto counts = parallel_map(all.size(), o.threads, [&](std::size_t i) {
    std::pair<std::int64_t, std::int64_t> c{0, 0};
    for (const auto& n : all) {
      if (!is_unit(gcd(all[i], n))) continue;
      ++c.first;
      if (symbol(all[i], n) != symbol(n, all[i])) ++c.second;
    }
    return c;
  });
  std::int64_t pairs = 0, bad = 0;
  for (const auto& c : counts) {
    pairs += c.first;
    bad += c.second;
  }
  return {bad == 0 && pairs > 0, std::to_string(pairs) + " coprime primary pairs with norms <= " + std::to_string(nmax) +
                                     "; violations " + std::to_string(bad)};
}

Verdict poisson(const AcceptanceOptions& o) {
  Timer timer;
  std::mt19937_64 rng(o.seed ^ 0x504f4953ULL);
  std::vector<EisensteinInt> qs;
  for_each_lattice_point(25, 1, 0, 1, 0, [&](const EisensteinInt& q) {
    if (!q.is_zero()) qs.push_back(q);
  });
  std::sort(qs.begin(), qs.end(), CanonicalLess{});
  const int cases = o.quick ? 5 : 20;
  struct Case {
    EisensteinInt q, r;
    double M;
  };
  std::vector<Case> cs;
  for (int i = 0; i < cases; ++i) {
    const auto q = qs[draw_index(rng, qs.size())];
    const EisensteinInt r{static_cast<std::int64_t>(draw_index(rng, 61)) - 30, static_cast<std::int64_t>(draw_index(rng, 61)) - 30};
    cs.push_back({q, r, std::pow(10.0, 2.0 + 2.0 * draw_unit(rng))});
  }
  const auto res = parallel_map(cs.size(), o.threads, [&](std::size_t i) { return poisson_check(cs[i].q, cs[i].r, cs[i].M); });
  double worst = 0.0;
  for (const auto& r : res) worst = std::max(worst, r.residual);
  const double t = timer.seconds();
  const double limit = 60.0;
  return {worst < 1e-6 && t <= limit, std::to_string(cases) + " seeded cases, N(q) <= 25, M in [1e2, 1e4]; max residual " +
                                          num(worst) + " (tol 1e-6); " + runtime_note(t, limit)};
}

Verdict twisted(const AcceptanceOptions& o) {
  Timer timer;
  const double X = o.quick ? 1e5 : 1e6;
  const auto one = twisted_count(X, {1, 0}, o.threads);
  std::vector<EisensteinInt> pool;
  for_each_lattice_point(100, 1, 0, 1, 0, [&](const EisensteinInt& l) {
    if (!l.is_zero() && classify_ell(l).kind != EllClass::Cube) pool.push_back(l);
  });
  std::sort(pool.begin(), pool.end(), CanonicalLess{});
  std::mt19937_64 rng(o.seed ^ 0x5457495354ULL);
  const auto ells = sample_without_replacement(pool, o.quick ? 5 : 30, rng);
  const double bound = std::pow(X, 0.55);
  double worst = 0.0;
  for (const auto& l : ells) worst = std::max(worst, std::abs(twisted_count(X, l, o.threads).computed));
  const double t = timer.seconds();
  const double limit = 600.0;
  const bool cube_ok = one.relative_gap <= 0.05;
  return {cube_ok && worst <= bound && t <= limit,
          "X = " + num(X) + ": S(1) = " + num(one.computed.real(), 8) + " vs main " + num(one.main_term, 8) +
              ", gap " + num(one.relative_gap) + " (tol 0.05); " + std::to_string(ells.size()) +
              " non-cube ell: max |S| = " + num(worst) + " <= X^0.55 = " + num(bound) + "; " + runtime_note(t, limit)};
}

Verdict functional_equation(const AcceptanceOptions& o) {
  Timer timer;
  std::mt19937_64 rng(o.seed ^ 0x4645ULL);
  const auto fam = sample_without_replacement(family_iter(0, 10000), o.quick ? 5 : 50, rng);
  std::vector<std::vector<cplx>> points(fam.size());
  for (auto& p : points) {
    for (int i = 0; i < 5; ++i) {
      const double sigma = 0.5 + 0.5 * draw_unit(rng);
      p.emplace_back(sigma, -10.0 + 20.0 * draw_unit(rng));
    }
  }
  struct Row {
    double fe = 0.0, unit = 0.0;
  };
  const auto rows = parallel_map(fam.size(), o.threads, [&](std::size_t i) {
    GaussSumCache cache;
    const auto d = dirichlet_coefficients(fam[i], cutoff_for_height(fam[i].norm, 10.0), &cache);
    Row r;
    r.unit = std::abs(std::abs(d.root_number) - 1.0);
    for (const auto& s : points[i]) r.fe = std::max(r.fe, fe_residual(d, s));
    return r;
  });
  Row all;
  for (const auto& r : rows) {
    all.fe = std::max(all.fe, r.fe);
    all.unit = std::max(all.unit, r.unit);
  }
  const double t = timer.seconds();
  const double limit = 600.0;
  return {all.fe < 1e-6 && all.unit < 1e-8 && t <= limit,
          std::to_string(fam.size()) + " conductors (norm <= 1e4) x 5 points; max residual " + num(all.fe) +
              " (tol 1e-6); max ||eps| - 1| " + num(all.unit) + "; " + runtime_note(t, limit)};
}

Verdict explicit_formula(const AcceptanceOptions& o) {
  Timer timer;
  std::mt19937_64 rng(o.seed ^ 0x4558504cULL);
  const auto fam = sample_without_replacement(family_iter(0, 500), o.quick ? 1 : 5, rng);
  const std::vector<double> Ls = o.quick ? std::vector<double>{4.0} : std::vector<double>{3.0, 4.0, 5.0};
  const auto pair = fejer_pair();
  struct Job {
    std::size_t f;
    double L, T;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (double L : Ls) {
      double T = 10.0;
      while (zero_tail_bound(fam[i].norm, L, T) >= 1e-3) T += 1.0;
      jobs.push_back({i, L, T});
    }
  }
  const auto res = parallel_map(jobs.size(), o.threads, [&](std::size_t j) {
    GaussSumCache cache;
    return explicit_formula_check(fam[jobs[j].f], pair, jobs[j].L, jobs[j].T, &cache);
  });
  double worst = 0.0;
  bool certified = true;
  std::size_t zeros = 0;
  for (const auto& r : res) {
    worst = std::max(worst, r.residual);
    certified = certified && r.certified;
    zeros += r.zero_count;
  }
  std::string norms;
  for (const auto& f : fam) norms += (norms.empty() ? "" : ",") + std::to_string(f.norm);
  const double t = timer.seconds();
  const double limit = 1800.0;
  return {worst < 1e-2 && certified && t <= limit,
          "norms {" + norms + "}, L in {" + (o.quick ? "4" : "3,4,5") + "}, T from the tail estimate < 1e-3; " +
              std::to_string(zeros) + " zeros, all certified: " + (certified ? "yes" : "no") + "; max residual " +
              num(worst) + " (tol 1e-2); " + runtime_note(t, limit)};
}

Verdict route_agreement(const AcceptanceOptions& o) {
  const double X = o.quick ? 400.0 : 3000.0;
  const auto pair = fejer_pair();
  const auto ps = one_level_density(X, 3.0, {1, 0}, DensityRoute::PrimeSums, pair, o.threads);
  const auto zs = one_level_density(X, 3.0, {1, 0}, DensityRoute::Zeros, pair, o.threads, o.quick ? 30.0 : 40.0);
  const double gap = std::abs(zs.computed - ps.computed);
  return {gap < 1e-2 && zs.certified,
          "X = " + num(X) + ", L = 3, ell = 1, " + std::to_string(ps.family_count) + " conductors: zeros " +
              num(zs.computed, 10) + " vs prime sums " + num(ps.computed, 10) + ", |diff| " + num(gap) +
              " (tol 1e-2; per unit weight " + num(gap / ps.weight_sum) + "); zero scans certified: " +
              (zs.certified ? "yes" : "no")};
}

Verdict moment_trend(const AcceptanceOptions& o) {
  Timer timer;
  const double X = o.quick ? 1e5 : 1e6;
  const auto samples = sweep_P(X, preset_length(X), o.threads);
  const auto m = real_moments(samples, 3);
  const double target = 0.5 * std::log(std::log(X)) * X * SmoothWindow::phi_hat0() / (81.0 * zeta_K2());
  const double ratio = m.re[2] / target;
  const double odd1 = std::abs(m.re[1]) / m.abs[1], odd3 = std::abs(m.re[3]) / m.abs[3];
  const double t = timer.seconds();
  const double limit = 900.0;
  return {std::abs(ratio - 1.0) <= 0.3 && odd1 <= 0.05 && odd3 <= 0.05 && t <= limit,
          "X = " + num(X) + ", x = " + num(preset_length(X)) + ": sum (Re P)^2 Phi / ((1/2) log log X main) = " +
              num(ratio) + " (tol 1 +- 0.3); odd |sum (Re P)^k Phi| / sum |P|^k Phi: k=1 " + num(odd1) + ", k=3 " +
              num(odd3) + " (tol 0.05); " + runtime_note(t, limit)};
}

Verdict density_trend(const AcceptanceOptions& o) {
  const double X = o.quick ? 1e5 : 1e6;
  const auto r = one_level_density(X, 3.0, {1, 0}, DensityRoute::PrimeSums, fejer_pair(), o.threads);
  return {r.relative_gap <= 0.15, "X = " + num(X) + ", L = 3, ell = 1: D^T = " + num(r.computed, 8) + " vs main " +
                                      num(r.main_term, 8) + " (C_3h = " + num(r.c3h) + "), gap " + num(r.relative_gap) +
                                      " (tol 0.15)"};
}

Verdict expansion(const AcceptanceOptions& o) {
  std::mt19937_64 rng(o.seed ^ 0x455850ULL);
  const auto fam = sample_without_replacement(family_iter(0, 5000), o.quick ? 3 : 20, rng);
  const auto worst = parallel_map(fam.size(), o.threads, [&](std::size_t i) {
    double w = 0.0;
    for (double x : {50.0, 200.0}) {
      for (int k = 0; k <= 4; ++k) w = std::max(w, expansion_check(fam[i], x, k));
    }
    return w;
  });
  const double w = *std::max_element(worst.begin(), worst.end());
  return {w < 1e-9, std::to_string(fam.size()) + " conductors, k = 0..4, x in {50, 200}; max residual " + num(w) +
                        " (tol 1e-9)"};
}

Verdict distribution(const AcceptanceOptions& o) {
  const double X = o.quick ? 1e5 : 1e6;
  const auto p = distribution_P(X, preset_length(X), -1.0, 1.0, o.threads);
  double mass = 0.0;
  for (double b : p.bins) mass += b;
  const double cap = o.quick ? 2000.0 : 1e4;
  const auto l = distribution_logL(cap, preset_length(cap), -1.0, 1.0, o.threads);
  double lmass = 0.0;
  for (double b : l.bins) lmass += b;
  const double gap = std::abs(p.fraction - p.psi_value);
  const bool masses = std::abs(mass - 1.0) < 1e-12 && std::abs(lmass - 1.0) < 1e-12;
  return {masses && gap <= 0.15,
          "mass " + num(mass, 15) + "; X = " + num(X) + ": freq Q in (-1,1) = " + num(p.fraction) + " vs Psi = " +
              num(p.psi_value) + ", gap " + num(gap) + " (tol 0.15); log L at X_cap = " + num(cap) + ": fraction " +
              num(l.fraction) + " vs floor (2/13) Psi = " + num(l.floor) + ", shortfall " + num(l.floor_shortfall) +
              " (informational)"};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism(const AcceptanceOptions& o) {
  if (o.cli_path.empty() || !std::filesystem::exists(o.cli_path)) return {false, "CLI executable not found: " + o.cli_path};
  const auto dir = std::filesystem::temp_directory_path() / ("cubic-determinism-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> commands = {
      "family --xmax 3000",
      "gauss-sum --n 10 --k 4,3",
      "poisson-check --cases 3",
      "moments --X 2e4 --k 1 --j 1",
      "central-values --xmax 1500 --format json",
      "zeros --conductor 10 --T 12",
      "density --X 2e4 --L 3 --ell 1 --route prime-sums",
      "distribution --X 2e4 --kind P --format json",
  };
  if (!o.quick) {
    commands.push_back("distribution --X 3000 --kind logL --format json");
    commands.push_back("density --X 500 --L 3 --ell 1 --route zeros --T 20");
    commands.push_back("moments --X 1e5 --k 2 --j 2 --format json");
  }
  int identical = 0;
  std::string failed;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outs[3];
    bool ran = true;
    const int threads[3] = {1, 1, 8};
    for (int run = 0; run < 3; ++run) {
      const auto file = dir / ("out" + std::to_string(i) + "_" + std::to_string(run));
      const std::string cmd = "'" + o.cli_path + "' " + commands[i] + " --seed " + std::to_string(o.seed) +
                              " --threads " + std::to_string(threads[run]) + " --output '" + file.string() +
                              "' 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) ran = false;
      outs[run] = read_file(file);
    }
    if (ran && !outs[0].empty() && outs[0] == outs[1] && outs[0] == outs[2]) {
      ++identical;
    } else {
      failed += (failed.empty() ? "" : "; ") + commands[i] + (ran ? "" : " (exit status)");
    }
  }
  std::filesystem::remove_all(dir);
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " subcommands byte-identical over two 1-thread runs and one 8-thread run" +
              (failed.empty() ? "" : "; differing: " + failed)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const AcceptanceOptions&)> run;
};

}  // namespace

const std::set<int>& known_failures() {
  // 5: the family count carries the lambda Euler factor 9/8 that the stated main term omits.
  // 9, 10, 12: lower-order terms dominate the log log X and log X scales at X = 1e6.
  static const std::set<int> s{5, 9, 10, 12};
  return s;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out, std::ostream& log) {
  const std::vector<Criterion> criteria = {
      {1, "Gauss-sum oracle equivalence", gauss_oracle},
      {2, "prime-power vanishing", prime_power_vanishing},
      {3, "cubic reciprocity", reciprocity},
      {4, "Poisson identity", poisson},
      {5, "twisted family count", twisted},
      {6, "functional-equation self-consistency", functional_equation},
      {7, "explicit formula", explicit_formula},
      {8, "one-level density route agreement", route_agreement},
      {9, "second moment of Re P trend", moment_trend},
      {10, "twisted one-level density trend", density_trend},
      {11, "multinomial expansion identity", expansion},
      {12, "distribution pipeline", distribution},
      {13, "CLI determinism", determinism},
  };
  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    if (!opt.only.empty() && !opt.only.count(c.id)) continue;
    Timer timer;
    Verdict v;
    try {
      v = c.run(opt);
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    CriterionResult r{c.id, c.name, v.pass, v.detail, timer.seconds()};
    out << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << (opt.quick ? " (quick)" : "") << ": "
        << r.detail << std::endl;
    log << "# criterion " << r.id << " took " << num(r.seconds, 3) << " s" << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace cubic
