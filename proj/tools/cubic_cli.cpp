// SPDX-License-Identifier: Apache-2.0
//
// Batch front end. Every subcommand writes a header block and a table, either
// as CSV ('#' header lines, then columns) or as one JSON document. Numbers are
// printed in their shortest round-trip form, so output is byte-stable across
// runs and worker counts. Wall time goes to stderr unless --timing is given.
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "cubic/acceptance.hpp"
#include "cubic/characters.hpp"
#include "cubic/density.hpp"
#include "cubic/dirichlet_poly.hpp"
#include "cubic/gauss.hpp"
#include "cubic/lfunc.hpp"
#include "cubic/parallel.hpp"
#include "cubic/stats.hpp"
#include "cubic/testfunc.hpp"

#ifndef CUBIC_VERSION
#define CUBIC_VERSION "0.0.0"
#endif

namespace {

using namespace cubic;
using json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, std::string, bool>;

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return shortest(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Options shared by every subcommand (the flat run configuration).
struct Globals {
  int threads = default_threads();
  std::uint64_t seed = 20240601;
  std::string format = "csv";
  std::string output;
  std::string x = "paper";
  double L = 3.0;
  bool timing = false;
};

struct Run {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  std::vector<std::pair<std::string, std::string>> notes;   // resolved presets and similar
  Table table;
  json report;  // extra structured payload (distribution)
  std::vector<std::string> summary;  // CSV-only trailing '#' lines
};

EisensteinInt parse_eis(const std::string& flag, const std::string& s) {
  std::int64_t a = 0, b = 0;
  const auto comma = s.find(',');
  auto parse = [&](std::string_view part, std::int64_t& out) {
    const auto r = std::from_chars(part.data(), part.data() + part.size(), out);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size())
      throw DomainError(flag + ": expected an integer a or a pair a,b, got '" + s + "'");
  };
  const std::string_view sv(s);
  parse(sv.substr(0, comma), a);
  if (comma != std::string::npos) parse(sv.substr(comma + 1), b);
  return {a, b};
}

double resolve_x(const Globals& g, double X, Run& run) {
  double x = 0.0;
  if (g.x == "paper") {
    x = preset_length(X);
    run.notes.emplace_back("x_preset", "paper");
  } else {
    try {
      std::size_t used = 0;
      x = std::stod(g.x, &used);
      if (used != g.x.size()) throw std::invalid_argument(g.x);
    } catch (const std::exception&) {
      throw DomainError("--x: expected a positive number or 'paper', got '" + g.x + "'");
    }
    if (!(x > 0.0)) throw DomainError("--x must be positive");
    run.notes.emplace_back("x_preset", "explicit");
  }
  run.notes.emplace_back("x_preset_value", shortest(preset_length(X)));
  run.notes.emplace_back("x_used", shortest(x));
  return x;
}

void echo_options(const CLI::App* app, Run& run, const std::set<std::string>& skip) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || skip.count(name)) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
      if (opt->get_type_size() == 0 && value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
    }
    run.config.emplace_back(name, value);
  }
}

std::string render(const Run& run, const Globals& g, double wall) {
  std::ostringstream out;
  if (g.format == "json") {
    json doc;
    doc["version"] = CUBIC_VERSION;
    doc["command"] = run.command;
    json cfg = json::object();
    for (const auto& [k, v] : run.config) cfg[k] = v;
    doc["config"] = cfg;
    for (const auto& [k, v] : run.notes) doc["resolved"][k] = v;
    doc["wall_time_s"] = g.timing ? json(wall) : json(nullptr);
    if (!run.table.columns.empty()) {
      json rows = json::array();
      for (const auto& r : run.table.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < r.size(); ++i) o[run.table.columns[i]] = cell_json(r[i]);
        rows.push_back(o);
      }
      doc["columns"] = run.table.columns;
      doc["rows"] = rows;
    }
    if (!run.report.is_null()) doc["report"] = run.report;
    out << doc.dump(2) << '\n';
    return out.str();
  }
  out << "# cubic " << CUBIC_VERSION << '\n' << "# command=" << run.command << '\n';
  for (const auto& [k, v] : run.config) out << "# config." << k << '=' << v << '\n';
  for (const auto& [k, v] : run.notes) out << "# " << k << '=' << v << '\n';
  out << "# wall_time_s=" << (g.timing ? shortest(wall) : std::string("not recorded (pass --timing)")) << '\n';
  for (const auto& s : run.summary) out << "# " << s << '\n';
  for (std::size_t i = 0; i < run.table.columns.size(); ++i) out << (i ? "," : "") << run.table.columns[i];
  out << '\n';
  for (const auto& r : run.table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell_text(r[i]);
    out << '\n';
  }
  return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json dist_json(const DistReport& r) {
  json j;
  j["X"] = r.X;
  j["sample_count"] = r.sample_count;
  j["edges"] = r.edges;
  j["bins"] = r.bins;
  j["gaussian_reference"] = r.gaussian_reference;
  j["ks_distance"] = r.ks_distance;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["fraction"] = r.fraction;
  j["fraction_alt"] = r.fraction_alt;
  j["psi"] = r.psi_value;
  j["floor"] = r.floor;
  j["floor_shortfall"] = r.floor_shortfall;
  j["nonvanishing_fraction"] = r.nonvanishing_fraction;
  j["vanishing_count"] = r.vanishing_count;
  j["moments"] = r.moments;
  j["residual_mean"] = r.residual_mean;
  j["residual_sd"] = r.residual_sd;
  j["conjugate_mismatch"] = r.conjugate_mismatch;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic characters over Q(w): Gauss sums, family sums, L-values and low-lying zeros"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", CUBIC_VERSION);
  app.set_config("--config", "", "Flat key=value file; subcommand keys take the form name.key=value");

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (default: CUBIC_THREADS or the hardware count)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized case generation")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", g.output, "Output file (default: stdout)");
  app.add_option("--x", g.x, "Dirichlet polynomial length, a number or 'paper'")->capture_default_str();
  app.add_option("--L", g.L, "Test function scale for the density")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--timing", g.timing, "Record wall time and per-row seconds in the output");

  Run run;
  std::function<void()> action;

  auto* family = app.add_subcommand("family", "Family conductors f = 1 mod 9, square-free, in canonical order");
  std::int64_t fam_lo = 0, fam_hi = 1000;
  family->add_option("--xmin", fam_lo, "Exclusive lower norm bound")->capture_default_str();
  family->add_option("--xmax", fam_hi, "Inclusive upper norm bound")->check(CLI::PositiveNumber)->capture_default_str();
  family->callback([&] {
    action = [&] {
      if (fam_hi > 10'000'000) throw DomainError("family: --xmax must be <= 1e7");
      run.table.columns = {"a", "b", "norm"};
      for (const auto& f : family_iter(fam_lo, fam_hi))
        run.table.rows.push_back({f.conductor.a, f.conductor.b, f.norm});
    };
  });

  auto* gauss = app.add_subcommand("gauss-sum", "g(k, n) by factorisation, with a brute-force check when N(n) <= 1e6");
  std::string gs_n = "10", gs_k = "1";
  gauss->add_option("--n", gs_n, "Primary modulus a or a,b")->capture_default_str();
  gauss->add_option("--k", gs_k, "Twist a or a,b")->capture_default_str();
  gauss->callback([&] {
    action = [&] {
      const auto n = parse_eis("--n", gs_n), k = parse_eis("--k", gs_k);
      if (!is_primary(n)) throw DomainError("gauss-sum: --n must be primary (a = 1 mod 3, b = 0 mod 3)");
      const auto f = gauss_factored(k, n);
      run.table.columns = {"k_a", "k_b", "n_a", "n_b", "norm", "g_re", "g_im", "abs_over_sqrt_norm", "exact_zero",
                           "brute_re", "brute_im"};
      std::vector<Cell> row{k.a, k.b, n.a, n.b, norm(n), f.value.real(), f.value.imag(),
                            std::abs(f.value) / std::sqrt(static_cast<double>(norm(n))), f.exact_zero};
      if (norm(n) <= 1'000'000) {
        const auto b = gauss_bruteforce(k, n).value;
        row.emplace_back(b.real());
        row.emplace_back(b.imag());
      } else {
        row.emplace_back(std::string());
        row.emplace_back(std::string());
      }
      run.table.rows.push_back(row);
    };
  });

  auto* poisson = app.add_subcommand("poisson-check", "Both sides of the Poisson identity over a residue class");
  std::string pq = "2", pr = "1";
  double pM = 1000.0;
  int pcases = 0;
  poisson->add_option("--q", pq, "Modulus a or a,b")->capture_default_str();
  poisson->add_option("--r", pr, "Residue a or a,b")->capture_default_str();
  poisson->add_option("--M", pM, "Scale")->check(CLI::PositiveNumber)->capture_default_str();
  poisson->add_option("--cases", pcases, "Instead of --q/--r/--M, run this many seeded random cases")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  poisson->callback([&] {
    action = [&] {
      struct Case {
        EisensteinInt q, r;
        double M;
      };
      std::vector<Case> cases;
      if (pcases == 0) {
        cases.push_back({parse_eis("--q", pq), parse_eis("--r", pr), pM});
        if (cases[0].q.is_zero()) throw DomainError("poisson-check: --q must be nonzero");
      } else {
        std::vector<EisensteinInt> qs;
        for_each_lattice_point(25, 1, 0, 1, 0, [&](const EisensteinInt& q) {
          if (!q.is_zero()) qs.push_back(q);
        });
        std::sort(qs.begin(), qs.end(), CanonicalLess{});
        std::mt19937_64 rng(g.seed);
        for (int i = 0; i < pcases; ++i) {
          const auto q = qs[rng() % qs.size()];
          const EisensteinInt r{static_cast<std::int64_t>(rng() % 61) - 30, static_cast<std::int64_t>(rng() % 61) - 30};
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          cases.push_back({q, r, std::pow(10.0, 2.0 + 2.0 * u)});
        }
      }
      const auto res = parallel_map(cases.size(), g.threads,
                                    [&](std::size_t i) { return poisson_check(cases[i].q, cases[i].r, cases[i].M); });
      run.table.columns = {"q_a", "q_b", "r_a", "r_b", "M", "lhs", "rhs", "residual"};
      for (std::size_t i = 0; i < cases.size(); ++i)
        run.table.rows.push_back({cases[i].q.a, cases[i].q.b, cases[i].r.a, cases[i].r.b, cases[i].M, res[i].lhs,
                                  res[i].rhs, res[i].residual});
    };
  });

  auto* moments = app.add_subcommand("moments", "Smoothed family moments of P^k conj(P)^j");
  double mX = 1e5;
  int mk = 1, mj = 1;
  moments->add_option("--X", mX, "Family scale")->check(CLI::PositiveNumber)->capture_default_str();
  moments->add_option("--k", mk, "Power of P")->check(CLI::Range(0, 3))->capture_default_str();
  moments->add_option("--j", mj, "Power of conj(P)")->check(CLI::Range(0, 3))->capture_default_str();
  moments->callback([&] {
    action = [&] {
      const double x = resolve_x(g, mX, run);
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = moment_sum(mX, mk, mj, x, g.threads);
      run.table.columns = {"X", "x", "k", "j", "computed_re", "computed_im", "main_term", "relative_gap",
                           "family_count", "seconds"};
      run.table.rows.push_back({r.X, r.x, std::int64_t{r.k}, std::int64_t{r.j}, r.computed.real(), r.computed.imag(),
                                r.main_term, r.relative_gap, r.family_count, g.timing ? seconds_since(t0) : 0.0});
    };
  });

  auto* central = app.add_subcommand("central-values", "L(1/2, chi_f) and root numbers over the family");
  std::int64_t cv_lo = 0, cv_hi = 1000;
  central->add_option("--xmin", cv_lo, "Exclusive lower norm bound")->capture_default_str();
  central->add_option("--xmax", cv_hi, "Inclusive upper norm bound")->check(CLI::PositiveNumber)->capture_default_str();
  central->callback([&] {
    action = [&] {
      if (cv_hi > 100'000) throw DomainError("central-values: --xmax must be <= 1e5");
      const auto fam = family_iter(cv_lo, cv_hi);
      GaussSumCache cache;
      const auto rows = parallel_map(fam.size(), g.threads, [&](std::size_t i) {
        const auto d = dirichlet_coefficients(fam[i], default_cutoff(fam[i].norm), &cache);
        return std::make_pair(central_value(d), d.root_number);
      });
      run.table.columns = {"conductor_a", "conductor_b", "norm", "L_re", "L_im", "abs_L", "root_re", "root_im",
                           "fe_residual"};
      for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto& [cv, eps] = rows[i];
        run.table.rows.push_back({fam[i].conductor.a, fam[i].conductor.b, fam[i].norm, cv.L.real(), cv.L.imag(),
                                  std::abs(cv.L), eps.real(), eps.imag(), cv.fe_residual});
      }
    };
  });

  auto* zeros = app.add_subcommand("zeros", "Certified zeros of L(s, chi_f) with |gamma| <= T");
  std::string z_f = "10";
  double z_T = 20.0;
  zeros->add_option("--conductor", z_f, "Family conductor a or a,b")->capture_default_str();
  zeros->add_option("--T", z_T, "Height")->check(CLI::PositiveNumber)->capture_default_str();
  zeros->callback([&] {
    action = [&] {
      const auto c = parse_eis("--conductor", z_f);
      if (!is_primary(c)) throw DomainError("zeros: --conductor must be primary");
      const auto f = make_family_member(c);
      GaussSumCache cache;
      const auto d = dirichlet_coefficients(f, cutoff_for_height(f.norm, z_T), &cache);
      const auto zl = find_zeros(d, z_T);
      run.notes.emplace_back("argument_count", std::to_string(zl.argument_count));
      run.notes.emplace_back("spacing", shortest(zl.spacing));
      run.table.columns = {"conductor_a", "conductor_b", "norm", "gamma", "certified"};
      for (double gamma : zl.ordinates) run.table.rows.push_back({c.a, c.b, f.norm, gamma, zl.certified});
    };
  });

  auto* density = app.add_subcommand("density", "Twisted one-level density of low-lying zeros");
  double dX = 1e5, dT = 0.0;
  std::string d_ell = "1", d_route = "prime-sums";
  density->add_option("--X", dX, "Family scale")->check(CLI::PositiveNumber)->capture_default_str();
  density->add_option("--ell", d_ell, "Twist a or a,b")->capture_default_str();
  density->add_option("--route", d_route, "Evaluation route")
      ->check(CLI::IsMember({"zeros", "prime-sums"}))
      ->capture_default_str();
  density->add_option("--T", dT, "Zero height for the zeros route (0 = default)")->capture_default_str();
  density->callback([&] {
    action = [&] {
      const auto ell = parse_eis("--ell", d_ell);
      const auto route = d_route == "zeros" ? DensityRoute::Zeros : DensityRoute::PrimeSums;
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = one_level_density(dX, g.L, ell, route, fejer_pair(), g.threads, dT);
      run.notes.emplace_back("ell_class", to_string(r.ell_class));
      run.notes.emplace_back("family_count", std::to_string(r.family_count));
      run.notes.emplace_back("weight_sum", shortest(r.weight_sum));
      run.notes.emplace_back("computed_imag", shortest(r.computed_imag));
      if (route == DensityRoute::Zeros) {
        run.notes.emplace_back("T", shortest(r.T));
        run.notes.emplace_back("certified", r.certified ? "true" : "false");
      }
      run.table.columns = {"X", "L", "ell_a", "ell_b", "route", "computed", "main_term", "c3h", "relative_gap",
                           "hypothesis_met", "seconds"};
      run.table.rows.push_back({r.X, r.L, ell.a, ell.b, d_route, r.computed, r.main_term, r.c3h, r.relative_gap,
                                r.hypothesis_met, g.timing ? seconds_since(t0) : 0.0});
    };
  });

  auto* dist = app.add_subcommand("distribution", "Distribution of Re P or log |L(1/2)| against the normal law");
  double sX = 1e5, s_alpha = -1.0, s_beta = 1.0;
  std::string s_kind = "P";
  dist->add_option("--X", sX, "Family scale (logL: norm cap, at most 1e4)")->check(CLI::PositiveNumber)->capture_default_str();
  dist->add_option("--kind", s_kind, "Statistic")->check(CLI::IsMember({"P", "logL"}))->capture_default_str();
  dist->add_option("--alpha", s_alpha, "Interval start")->capture_default_str();
  dist->add_option("--beta", s_beta, "Interval end")->capture_default_str();
  dist->callback([&] {
    action = [&] {
      const double x = resolve_x(g, sX, run);
      const auto r = s_kind == "P" ? distribution_P(sX, x, s_alpha, s_beta, g.threads)
                                   : distribution_logL(sX, x, s_alpha, s_beta, g.threads);
      run.report = dist_json(r);
      run.summary = {"sample_count=" + std::to_string(r.sample_count), "ks_distance=" + shortest(r.ks_distance),
                     "fraction=" + shortest(r.fraction), "fraction_alt=" + shortest(r.fraction_alt),
                     "psi=" + shortest(r.psi_value)};
      if (s_kind == "logL") {
        run.summary.push_back("floor=" + shortest(r.floor));
        run.summary.push_back("floor_shortfall=" + shortest(r.floor_shortfall));
        run.summary.push_back("nonvanishing_fraction=" + shortest(r.nonvanishing_fraction));
      }
      if (g.format == "csv") {
        run.table.columns = {"bin_lo", "bin_hi", "mass", "gaussian"};
        for (std::size_t i = 0; i < r.bins.size(); ++i) {
          const Cell lo = i == 0 ? Cell(std::string("-inf")) : Cell(r.edges[i - 1]);
          const Cell hi = i == r.edges.size() ? Cell(std::string("inf")) : Cell(r.edges[i]);
          run.table.rows.push_back({lo, hi, r.bins[i], r.gaussian_reference[i]});
        }
      }
    };
  });

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite; nonzero exit on any failure");
  bool quick = false;
  std::vector<int> only;
  self->add_flag("--quick", quick, "Reduced parameters");
  self->add_option("--only", only, "Criterion numbers to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (self->parsed()) {
      AcceptanceOptions o;
      o.quick = quick;
      o.threads = g.threads;
      o.seed = g.seed;
      o.cli_path = std::filesystem::read_symlink("/proc/self/exe").string();
      o.only = std::set<int>(only.begin(), only.end());
      const auto results = run_acceptance(o, std::cout, std::cerr);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
      return failed == 0 ? 0 : 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CLI::App* sub = app.get_subcommands().front();
    run.command = sub->get_name();
    echo_options(&app, run, {"threads", "output", "config", "timing", "version"});
    echo_options(sub, run, {});
    action();
    const double wall = seconds_since(t0);
    std::cerr << run.command << ": wall time " << shortest(wall) << " s" << std::endl;

    const std::string text = render(run, g, wall);
    if (g.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(g.output, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + g.output);
      f << text;
    }
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
