// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edgecache/outage.hpp"
#include "edgecache/policy.hpp"
#include "edgecache/popularity.hpp"

namespace edgecache {

/// Bernoulli Monte Carlo estimate.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
  std::uint64_t seed = 0;

  /// (mean - expected) / sqrt(expected (1 - expected) / trials): the binomial
  /// z-score under the hypothesis that `expected` is the true probability.
  /// Zero when expected is 0 or 1 and the estimate agrees exactly.
  [[nodiscard]] double z_score(double expected) const;
};

/// K complex channel gains, each CN(0, 1).
struct ChannelDraw {
  std::vector<std::complex<double>> gains;
};

struct McOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned workers = 0;
};

/// Substream tags. Channel draws of trial i use the same blocks in every
/// estimator, so estimators sharing a seed see the same channels.
inline constexpr std::uint32_t kChannelStream = 0;
inline constexpr std::uint32_t kRequestStream = 1;
inline constexpr std::uint32_t kRenyiStream = 2;

/// Squared channel magnitudes |g_k|^2 of trial `trial`, drawn directly as
/// standard exponentials -ln(U) with U in (0, 1].
void draw_channel_powers(std::uint64_t seed, std::uint64_t trial, std::span<double> out);

/// Complex gains of trial `trial` via Box-Muller on the same uniforms, so
/// |g_k|^2 matches `draw_channel_powers` up to rounding.
[[nodiscard]] ChannelDraw draw_channel(std::uint64_t seed, std::uint64_t trial, unsigned k_ens);

/// Per-trial outage indicators: sum of the t_d smallest |g_k|^2 below T_1.
[[nodiscard]] std::vector<std::uint8_t> outage_indicators(const OutageQuery& q, std::uint64_t trials,
                                                          std::uint64_t seed,
                                                          const McOptions& options = {});

/// Per-trial indicators from literal enumeration of all C(K, t_d) subsets
/// and their MISO rates log2(1 + P sum_{k in T} |g_k|^2).
[[nodiscard]] std::vector<std::uint8_t> outage_subsets_indicators(const OutageQuery& q,
                                                                  std::uint64_t trials,
                                                                  std::uint64_t seed,
                                                                  const McOptions& options = {});

[[nodiscard]] McEstimate mc_outage(const OutageQuery& q, std::uint64_t trials, std::uint64_t seed,
                                   const McOptions& options = {});

/// Subset-enumeration estimator; rejects C(K, t_d) > 10^4.
[[nodiscard]] McEstimate mc_outage_subsets(const OutageQuery& q, std::uint64_t trials,
                                           std::uint64_t seed, const McOptions& options = {});

inline constexpr std::uint64_t kMaxSubsets = 10000;

/// Ordered sample of K standard exponentials built from the cumulative sums
/// X_(k) = sum_{i <= k} Z_i / (K - i + 1). `draw` selects an independent
/// sample under the same seed.
[[nodiscard]] std::vector<double> sample_ordered_renyi(unsigned k_ens, std::uint64_t seed,
                                                       std::uint64_t draw = 0);

/// End-to-end system outage: request a file from the Zipf law, count a miss
/// as outage, otherwise test the t_d order-statistic event on a fresh channel.
[[nodiscard]] McEstimate mc_system_outage(const SystemConfig& config, const PlacementPolicy& policy,
                                          double power, std::uint64_t trials, std::uint64_t seed,
                                          const McOptions& options = {});

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
[[nodiscard]] double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample critical value c(alpha) sqrt((n + m) / (n m)).
[[nodiscard]] double ks_critical_value(std::size_t n, std::size_t m, double alpha);

}  // namespace edgecache
