// SPDX-License-Identifier: Apache-2.0
#include "cubic/density.hpp"

#include <cmath>

#include "cubic/dirichlet_poly.hpp"
#include "cubic/lfunc.hpp"
#include "cubic/parallel.hpp"

namespace cubic {

namespace {

constexpr double kPrimeSideNormCap = 2e4;

// Family members with Phi(N(f)/X) > 0, in canonical order.
std::vector<FamilyMember> family_window(double X) {
  const auto lo = static_cast<std::int64_t>(std::floor(0.5 * X));
  const auto hi = static_cast<std::int64_t>(std::ceil(2.5 * X));
  const PrimeTable table(std::max<std::int64_t>(hi, 2));
  auto fam = family_iter(lo, hi, &table);
  std::erase_if(fam, [X](const FamilyMember& f) { return SmoothWindow::phi(static_cast<double>(f.norm) / X) == 0.0; });
  return fam;
}

double family_scale(double X) { return X * SmoothWindow::phi_hat0() / (81.0 * zeta_K2()); }

// The prime side of the explicit formula for many conductors: for every prime
// ideal p with N(p) <= e^L the coefficients a_k = log N(p) N(p)^(-k/2) h^(k log N(p) / L),
// so that the prime term is (1/L) sum_p sum_k a_k 2 Re chi_f(p)^k.
class PrimeSide {
 public:
  PrimeSide(const TestFunctionPair& pair, double L)
      : L_(L), table_(static_cast<std::int64_t>(std::floor(std::exp(L)))) {
    const double emax = std::exp(L);
    auto coeffs = [&](double np) {
      std::vector<double> a;
      const double lp = std::log(np);
      double nk = np;
      for (int k = 1; nk <= emax; ++k, nk *= np) a.push_back(lp / std::sqrt(nk) * pair.h_hat(k * lp / L));
      return a;
    };
    lambda_ = coeffs(3.0);
    for (const auto& p : table_.primes()) a_.push_back(coeffs(static_cast<double>(p.norm())));
  }

  double operator()(const FamilyMember& f, std::vector<std::uint8_t>& scratch) const {
    NeumaierSum s;
    auto add = [&](const std::vector<double>& a, CubicSymbolValue v) {
      if (v.is_zero()) return;
      for (std::size_t k = 0; k < a.size(); ++k) {
        s.add(a[k] * 2.0 * v.pow(static_cast<int>(k + 1)).to_complex().real());
      }
    };
    const CubicCharacter chi(f.conductor, f.factorization);
    add(lambda_, chi(kRamifiedPrime));
    table_.chi_all(f.conductor, scratch);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      add(a_[i], scratch[i] == 3 ? CubicSymbolValue::zero() : CubicSymbolValue::omega_pow(scratch[i]));
    }
    return s.value() / L_;
  }

 private:
  double L_;
  ReciprocityTable table_;
  std::vector<double> lambda_;
  std::vector<std::vector<double>> a_;
};

void check_prime_side_length(double L, const char* who) {
  if (!(L >= 1.0) || std::exp(L) > kPrimeSideNormCap) {
    throw DomainError(std::string(who) + ": need 1 <= L and e^L <= 2e4");
  }
}

}  // namespace

std::string to_string(EllClass c) {
  switch (c) {
    case EllClass::Cube:
      return "cube";
    case EllClass::PrimeTimesCube:
      return "prime-times-cube";
    case EllClass::Other:
      break;
  }
  return "other";
}

std::string to_string(DensityRoute r) { return r == DensityRoute::Zeros ? "zeros" : "prime-sums"; }

EllShape classify_ell(const EisensteinInt& ell) {
  if (ell.is_zero()) throw DomainError("classify_ell: ell must be nonzero");
  EllShape s;
  int off = 0;
  for (const auto& pp : factor(ell).factors) {
    if (pp.prime.kind() == PrimeKind::Ramified) continue;
    s.euler_factor /= 1.0 + 1.0 / static_cast<double>(pp.prime.norm());
    if (pp.exponent % 3 != 0) {
      ++off;
      s.q = pp.prime.value();
      s.q_exponent = pp.exponent % 3;
    }
  }
  s.kind = off == 0 ? EllClass::Cube : off == 1 ? EllClass::PrimeTimesCube : EllClass::Other;
  if (s.kind != EllClass::PrimeTimesCube) {
    s.q = {0, 0};
    s.q_exponent = 0;
  }
  return s;
}

TwistedCount twisted_count(double X, const EisensteinInt& ell, int threads) {
  if (ell.is_zero()) throw DomainError("twisted_count: ell must be nonzero");
  if (!(X > 0.0)) throw DomainError("twisted_count: X must be positive");
  const double nl = static_cast<double>(norm(ell));
  if (std::pow(nl, 0.25) > std::sqrt(X)) throw DomainError("twisted_count: needs N(ell)^(1/4) <= sqrt(X)");
  const auto fam = family_window(X);
  const auto terms = parallel_map(fam.size(), threads, [&](std::size_t i) {
    const auto& f = fam[i];
    const CubicCharacter chi(f.conductor, f.factorization);
    return chi(ell).to_complex() * SmoothWindow::phi(static_cast<double>(f.norm) / X);
  });
  ComplexNeumaierSum s;
  for (const auto& t : terms) s.add(t);
  const EllShape shape = classify_ell(ell);
  TwistedCount r;
  r.computed = s.value();
  r.kind = shape.kind;
  r.family_count = static_cast<std::int64_t>(fam.size());
  if (shape.kind == EllClass::Cube) {
    r.main_term = family_scale(X) * shape.euler_factor;
    r.relative_gap = std::abs(r.computed / r.main_term - 1.0);
  } else {
    r.main_term = std::sqrt(X) * std::pow(nl, 0.25);
    r.relative_gap = std::abs(r.computed) / r.main_term;
  }
  return r;
}

C3h c3h(const TestFunctionPair& pair, double L) {
  if (!(L >= 1.0)) throw DomainError("c3h: L must be at least 1");
  const double qmax = std::exp(L / 3.0);
  C3h out;
  NeumaierSum s;
  for (const auto& p : primary_primes(static_cast<std::int64_t>(std::floor(qmax)))) {
    const double np = static_cast<double>(p.norm());
    const double lp = std::log(np);
    for (double nq = np; nq <= qmax; nq *= np) {
      s.add(lp / std::pow(nq, 1.5) / (1.0 + 1.0 / np) * pair.h_hat(3.0 * std::log(nq) / L));
      ++out.terms;
    }
  }
  out.value = s.value();
  return out;
}

double zero_sum_surrogate(const FamilyMember& f, const TestFunctionPair& pair, double L) {
  check_prime_side_length(L, "zero_sum_surrogate");
  return archimedean_term(f.norm, pair, L) - prime_term(f, pair, L);
}

DensityReport one_level_density(double X, double L, const EisensteinInt& ell, DensityRoute route,
                                const TestFunctionPair& pair, int threads, double T) {
  if (ell.is_zero()) throw DomainError("one_level_density: ell must be nonzero");
  if (!(X > 0.0)) throw DomainError("one_level_density: X must be positive");
  if (route == DensityRoute::Zeros && X > 1e4) throw DomainError("one_level_density: the zeros route needs X <= 1e4");
  if (route == DensityRoute::PrimeSums) {
    check_prime_side_length(L, "one_level_density");
    if (L > 13.0 / 11.0 * std::log(X)) throw DomainError("one_level_density: needs e^L <= X^(13/11)");
  }
  if (!(L >= 1.0)) throw DomainError("one_level_density: L must be at least 1");
  DensityReport r;
  r.X = X;
  r.L = L;
  r.ell = ell;
  r.route = route;
  const double nl = static_cast<double>(norm(ell));
  r.hypothesis_met = 11.0 * L + 14.0 * std::log(nl) <= 13.0 * std::log(X);

  const auto fam = family_window(X);
  r.family_count = static_cast<std::int64_t>(fam.size());
  struct Term {
    std::complex<double> value;
    double phi = 0.0;
    bool certified = true;
  };
  std::vector<Term> terms;
  if (route == DensityRoute::Zeros) {
    r.T = T > 0.0 ? T : 40.0;
    terms = parallel_map(fam.size(), threads, [&](std::size_t i) {
      const auto& f = fam[i];
      const CubicCharacter chi(f.conductor, f.factorization);
      const double phi = SmoothWindow::phi(static_cast<double>(f.norm) / X);
      const auto twist = chi(ell);
      const auto data = dirichlet_coefficients(f, cutoff_for_height(f.norm, r.T));
      const ZeroList z = find_zeros(data, r.T);
      NeumaierSum located;
      for (double g : z.ordinates) located.add(pair.h(g * L / (2.0 * M_PI)));
      const double zs = located.value() + archimedean_term(f.norm, pair, L, r.T);
      return Term{twist.to_complex() * zs * phi, phi, z.certified};
    });
  } else {
    const PrimeSide side(pair, L);
    terms = parallel_map(fam.size(), threads, [&](std::size_t i) {
      const auto& f = fam[i];
      const CubicCharacter chi(f.conductor, f.factorization);
      const double phi = SmoothWindow::phi(static_cast<double>(f.norm) / X);
      const auto twist = chi(ell);
      if (twist.is_zero()) return Term{0.0, phi, true};
      // chi_f(ell) (chi_f(n) + conj chi_f(n)) = chi_f(ell n) + chi_f(ell n^2) by multiplicativity.
      thread_local std::vector<std::uint8_t> scratch;
      const double s1 = archimedean_term(f.norm, pair, L);
      const double s2 = side(f, scratch);
      return Term{twist.to_complex() * (s1 - s2) * phi, phi, true};
    });
  }
  ComplexNeumaierSum total;
  NeumaierSum weights;
  for (const auto& t : terms) {
    total.add(t.value);
    weights.add(t.phi);
    r.certified = r.certified && t.certified;
  }
  r.computed = total.value().real();
  r.computed_imag = total.value().imag();
  r.weight_sum = weights.value();

  const EllShape shape = classify_ell(ell);
  r.ell_class = shape.kind;
  if (shape.kind == EllClass::Cube) {
    r.c3h = c3h(pair, L).value;
    r.main_term = family_scale(X) / L * shape.euler_factor * (pair.h_hat(0.0) * std::log(X) + r.c3h);
    r.relative_gap = std::abs(r.computed / r.main_term - 1.0);
  } else if (shape.kind == EllClass::PrimeTimesCube) {
    const double nq = static_cast<double>(norm(shape.q));
    // shape.euler_factor already runs over p | ell, which contains q.
    r.main_term = family_scale(X) * std::log(nq) * (1.0 + std::sqrt(nq)) * shape.euler_factor /
                  ((nq - 1.0 / std::sqrt(nq)) * L);
    r.relative_gap = std::abs(std::complex<double>(r.computed, r.computed_imag)) / r.main_term;
  } else {
    r.main_term = std::pow(X, 14.0 / 27.0) * std::exp(11.0 * L / 27.0) * std::pow(nl, 14.0 / 27.0) / L;
    r.relative_gap = std::abs(std::complex<double>(r.computed, r.computed_imag)) / r.main_term;
  }
  return r;
}

}  // namespace cubic
