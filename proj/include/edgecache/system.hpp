// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgecache/policy.hpp"
#include "edgecache/popularity.hpp"

namespace edgecache {

/// Average outage of the system: popularity-weighted cache-hit outage plus
/// the cache-miss mass of the uncached tail.
[[nodiscard]] double system_outage(const SystemConfig& config, const PlacementPolicy& policy,
                                   const Popularity& pop, double power);

/// Per-file and system outage across a power grid. One policy per grid point
/// (a fixed-policy report repeats the same policy). Uncached files carry
/// outage 1 in `per_file`, so `system[s] == sum_d p_d per_file[d][s]`.
struct OutageReport {
  std::vector<double> powers;                // linear SNR grid
  std::vector<PlacementPolicy> policies;     // one per grid point
  std::vector<std::vector<double>> per_file; // [file][grid point]
  std::vector<double> system;                // per grid point
};

[[nodiscard]] OutageReport make_outage_report(const SystemConfig& config, const Popularity& pop,
                                              std::span<const double> powers,
                                              std::span<const PlacementPolicy> policies);

/// Recombines `per_file` with the popularity weights, for consistency checks.
[[nodiscard]] std::vector<double> recompose_system(const OutageReport& report,
                                                   const Popularity& pop);

/// Smallest replication degree among cached files; 0 for the empty cache.
[[nodiscard]] unsigned hit_diversity(const PlacementPolicy& policy);

/// 0 when some file is uncached (n0 < N), otherwise the hit diversity.
[[nodiscard]] unsigned system_diversity(const PlacementPolicy& policy, std::size_t n_files);

}  // namespace edgecache
