// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace edgecache {

/// Network parameters. SNR is not part of the configuration; every function
/// below the CLI layer takes linear power explicitly.
struct SystemConfig {
  unsigned k_ens = 5;        // K edge nodes
  std::size_t n_files = 10;  // N files in the library
  unsigned cache_size = 1;   // M, in files per edge node
  double rho = 0.8;          // Zipf skewness
  double rate = 1.0;         // target rate R, bits/s/Hz

  /// Enforces K >= 1, 1 <= M < N, rho >= 0 finite, R > 0 finite.
  void validate() const;
  /// Total replication units available: sum_i t_i <= M K.
  [[nodiscard]] std::size_t budget() const { return std::size_t{cache_size} * k_ens; }
};

/// Cached prefix of the library: file i (1-indexed, i <= n0) has every bit
/// stored on t[i-1] distinct edge nodes. An empty `t` is the empty cache.
struct PlacementPolicy {
  std::vector<unsigned> t;

  [[nodiscard]] std::size_t n0() const noexcept { return t.size(); }
  /// Replication units used: sum_i t_i.
  [[nodiscard]] std::size_t units() const;
  [[nodiscard]] bool is_nonincreasing() const;

  friend bool operator==(const PlacementPolicy&, const PlacementPolicy&) = default;
};

/// Checks t_i in [1, K], n0 <= N and the budget sum_i t_i <= M K.
/// Does not require the canonical nonincreasing order.
void validate_policy(const PlacementPolicy& policy, const SystemConfig& config);

/// "2;2;1" form used in CSV output.
[[nodiscard]] std::string format_t_vector(const PlacementPolicy& policy);
[[nodiscard]] PlacementPolicy parse_t_vector(const std::string& text);

}  // namespace edgecache
