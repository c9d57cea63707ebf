// SPDX-License-Identifier: Apache-2.0
#include "edgecache/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "edgecache/error.hpp"

namespace edgecache {

void SystemConfig::validate() const {
  if (k_ens == 0) throw Error(ErrorCode::config, "config: k_ens must be at least 1");
  if (n_files == 0) throw Error(ErrorCode::config, "config: n_files must be at least 1");
  if (cache_size == 0 || cache_size >= n_files) {
    throw Error(ErrorCode::config, "config: cache_size M = " + std::to_string(cache_size) +
                                       " must satisfy 1 <= M < N = " + std::to_string(n_files));
  }
  if (!std::isfinite(rho) || rho < 0.0) {
    throw Error(ErrorCode::config, "config: rho must be finite and nonnegative");
  }
  if (!std::isfinite(rate) || !(rate > 0.0)) {
    throw Error(ErrorCode::config, "config: rate_bps_hz must be positive");
  }
}

std::size_t PlacementPolicy::units() const {
  return std::accumulate(t.begin(), t.end(), std::size_t{0});
}

bool PlacementPolicy::is_nonincreasing() const {
  return std::is_sorted(t.rbegin(), t.rend());
}

void validate_policy(const PlacementPolicy& policy, const SystemConfig& config) {
  if (policy.n0() > config.n_files) {
    throw_invalid("policy: n0 = " + std::to_string(policy.n0()) + " exceeds N = " +
                  std::to_string(config.n_files));
  }
  for (std::size_t i = 0; i < policy.t.size(); ++i) {
    if (policy.t[i] < 1 || policy.t[i] > config.k_ens) {
      throw_invalid("policy: t_" + std::to_string(i + 1) + " = " + std::to_string(policy.t[i]) +
                    " outside [1, K = " + std::to_string(config.k_ens) + "]");
    }
  }
  if (policy.units() > config.budget()) {
    throw_invalid("policy: sum of t_i = " + std::to_string(policy.units()) +
                  " exceeds the cache budget M K = " + std::to_string(config.budget()));
  }
}

std::string format_t_vector(const PlacementPolicy& policy) {
  std::string out;
  for (std::size_t i = 0; i < policy.t.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(policy.t[i]);
  }
  return out;
}

PlacementPolicy parse_t_vector(const std::string& text) {
  PlacementPolicy policy;
  if (text.empty()) return policy;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || item.front() == '-') {
      throw_invalid("parse_t_vector: malformed entry '" + item + "'");
    }
    policy.t.push_back(static_cast<unsigned>(value));
  }
  return policy;
}

}  // namespace edgecache
