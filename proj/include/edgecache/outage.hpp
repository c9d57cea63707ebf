// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace edgecache {

/// Weights c_k of the hypoexponential representation of the sum of the t_d
/// smallest of K standard exponentials: c_k = (t_d - k + 1) / (K - k + 1).
struct PartitionCoefficients {
  std::vector<double> coeffs;
  unsigned k_ens = 0;
  unsigned t_d = 0;
};

/// One cache-hit outage evaluation point. `power` is linear SNR (noise
/// variance 1); `rate` is in bits/s/Hz.
struct OutageQuery {
  unsigned k_ens = 1;
  unsigned t_d = 1;
  double power = 1.0;
  double rate = 1.0;

  /// T_1 = (2^R - 1) / P.
  [[nodiscard]] double threshold() const;
  void validate() const;
};

[[nodiscard]] PartitionCoefficients partition_coefficients(unsigned k_ens, unsigned t_d);

struct HypoexpOptions {
  /// Bound on sum|terms| / result before the evaluation is declared unreliable.
  double max_condition = 1e12;
};

/// Raw evaluation of P(sum c_i Z_i < T) without the precision check.
struct HypoexpEvaluation {
  double cdf = 0.0;           // from the divided-difference table, clamped
  double cdf_explicit = 0.0;  // from the partial-fraction sum, clamped
  double condition = 1.0;     // (1 + sum|w_i|) / result; +inf when result <= 0
};

[[nodiscard]] HypoexpEvaluation evaluate_hypoexp(std::span<const double> coeffs, double threshold);

/// CDF of a linear combination of iid standard exponentials with pairwise
/// distinct positive weights. Throws ErrorCode::precision_loss when the
/// alternating sum is too ill-conditioned to trust.
[[nodiscard]] double hypoexp_cdf(std::span<const double> coeffs, double threshold,
                                 const HypoexpOptions& options = {});

/// Regularized lower incomplete gamma P(K, T): CDF of a sum of K iid
/// standard exponentials.
[[nodiscard]] double gamma_sum_cdf(unsigned k_ens, double threshold);

/// Exact per-file outage probability for replication degree t_d. Falls back to
/// the small-threshold series when the closed form loses precision.
[[nodiscard]] double outage_closed_form(const OutageQuery& q);

/// Coefficient of T_1^m in 1 - P_out for t_d < K:
///   f(t_d, m) = (-1)^m / m! * sum_i c_i^(t_d-1-m) / prod_{j != i} (c_i - c_j).
[[nodiscard]] double series_coefficient(unsigned k_ens, unsigned t_d, unsigned m);

struct SeriesOptions {
  /// Highest power of T_1 summed. Zero selects t_d + 199 (a 200-term cap).
  unsigned truncation = 0;
  /// Stop once |next term| < rel_tol * |partial sum|.
  double rel_tol = 1e-16;
};

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;  // magnitude of the first omitted term (tail bound for t_d = K)
  unsigned last_order = 0;   // highest power of T_1 included
};

/// Small-threshold power series of the outage probability. Requires T_1 < 1.
[[nodiscard]] SeriesResult outage_series(const OutageQuery& q, const SeriesOptions& options = {});

/// Negated least-squares slope of log10(outage) against log10(P), P in dB grid.
[[nodiscard]] double diversity_fit(std::span<const double> snr_db,
                                   std::span<const double> outage);

}  // namespace edgecache
