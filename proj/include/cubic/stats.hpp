// SPDX-License-Identifier: Apache-2.0
//
// Empirical distributions over the family: Re P(chi_f; x) / sqrt(log log X)
// and log |L(1/2, chi_f)| / sqrt(log log N(f)), compared with the standard normal.
#pragma once

#include <cstdint>
#include <vector>

namespace cubic {

/// E Z^k for Z ~ N(0, sigma2): 0 for odd k, (k-1)!! sigma2^(k/2) for even k.
double normal_moment(int k, double sigma2);

/// Standard normal probability of (alpha, beta). Throws DomainError unless alpha < beta.
double psi(double alpha, double beta);

/// Standard normal CDF.
double normal_cdf(double x);

struct DistReport {
  double X = 0.0;
  std::int64_t sample_count = 0;
  /// Finite bin edges; bins[0] is (-inf, edges.front()) and bins.back() is (edges.back(), inf).
  std::vector<double> edges;
  /// Probability mass per bin (sums to 1).
  std::vector<double> bins;
  /// Psi over the same bins.
  std::vector<double> gaussian_reference;
  double ks_distance = 0.0;
  double alpha = 0.0, beta = 0.0;
  /// Fraction of the samples in (alpha, beta) and the normal prediction Psi(alpha, beta).
  double fraction = 0.0;
  double psi_value = 0.0;
  /// The same fraction under the other normalisation (sqrt(log log N(f)) for P,
  /// sqrt(log log X) for log L).
  double fraction_alt = 0.0;
  /// (2/13) Psi(alpha, beta) and max(0, floor - fraction); log L only.
  double floor = 0.0;
  double floor_shortfall = 0.0;
  double nonvanishing_fraction = 1.0;
  std::int64_t vanishing_count = 0;
  /// Empirical moments of the normalised value, k = 0..4.
  std::vector<double> moments;
  /// log L only: mean and spread of log |L(1/2)| - Re P(chi_f; x) over nonvanishing members,
  /// and the largest | |L(f)| - |L(conj f)| | over conjugate pairs (both members are counted).
  double residual_mean = 0.0;
  double residual_sd = 0.0;
  double conjugate_mismatch = 0.0;
};

/// Phi-weighted distribution of Q = Re P(chi_f; x) / sqrt(log log X) over the family window of X.
DistReport distribution_P(double X, double x, double alpha, double beta, int threads);

/// Distribution of log |L(1/2, chi_f)| / sqrt(log log N(f)) over every family
/// member with N(f) <= X_cap, one weight per conductor. Members with
/// |L(1/2)| < 1e-8 are counted as vanishing and left out of the histogram.
/// Requires X_cap <= 1e4.
DistReport distribution_logL(double X_cap, double x, double alpha, double beta, int threads);

}  // namespace cubic
