// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "edgecache/policy.hpp"
#include "edgecache/system.hpp"

namespace edgecache {

enum class PolicyFamily {
  partition,         // any t_i in [1, K]
  full_cooperation,  // t_i in {1, K} only
};

struct OptimizerOptions {
  PolicyFamily family = PolicyFamily::partition;
  /// Search every ordering of t instead of nonincreasing vectors only.
  bool full_enumeration = false;
};

struct OptimizationResult {
  PlacementPolicy best;
  double objective = 1.0;
  std::size_t explored = 0;
  double power = 0.0;
};

using PolicyVisitor = std::function<void(const PlacementPolicy&)>;

/// Visits every budget-feasible policy with 1 <= n0 <= N exactly once.
/// Default options yield nonincreasing vectors (partitions of at most M K
/// units into at most N parts, each part at most K).
void for_each_policy(const SystemConfig& config, const PolicyVisitor& visit,
                     const OptimizerOptions& options = {});

[[nodiscard]] std::vector<PlacementPolicy> enumerate_policies(const SystemConfig& config,
                                                              const OptimizerOptions& options = {});

/// Minimizes the system outage at one linear power. Ties (relative 1e-15)
/// go to the larger n0, then the lexicographically larger t.
[[nodiscard]] OptimizationResult optimize_placement(const SystemConfig& config, double power,
                                                    const OptimizerOptions& options = {});

struct SweepResult {
  std::vector<OptimizationResult> proposed;
  std::vector<OptimizationResult> baseline;
  OutageReport proposed_report;
  OutageReport baseline_report;
};

/// Optimal policy per grid point for both the partition scheme and the
/// full-cooperation baseline.
[[nodiscard]] SweepResult optimize_sweep(const SystemConfig& config, std::span<const double> powers,
                                         const OptimizerOptions& options = {});

/// min(M K / n0, K): hit diversity under uniform demand with equal t_i.
[[nodiscard]] double uniform_demand_hit_diversity(const SystemConfig& config, std::size_t n0);

/// Best system outage per grid point when each cached file uses t_i in {1, K}.
[[nodiscard]] OutageReport full_cooperation_baseline(const SystemConfig& config,
                                                     std::span<const double> powers);

}  // namespace edgecache
