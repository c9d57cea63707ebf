// SPDX-License-Identifier: Apache-2.0
#include "edgecache/system.hpp"

#include <algorithm>
#include <string>

#include "edgecache/error.hpp"
#include "edgecache/outage.hpp"

namespace edgecache {
namespace {

void check_population(const SystemConfig& config, const Popularity& pop) {
  if (pop.n_files() != config.n_files) {
    throw_invalid("popularity has " + std::to_string(pop.n_files()) + " files, config has " +
                  std::to_string(config.n_files));
  }
}

}  // namespace

double system_outage(const SystemConfig& config, const PlacementPolicy& policy,
                     const Popularity& pop, double power) {
  check_population(config, pop);
  validate_policy(policy, config);
  double hit = 0.0;
  std::vector<double> memo(config.k_ens + 1, -1.0);
  for (std::size_t d = 0; d < policy.n0(); ++d) {
    const unsigned t = policy.t[d];
    if (memo[t] < 0.0) memo[t] = outage_closed_form({config.k_ens, t, power, config.rate});
    hit += pop.probs()[d] * memo[t];
  }
  return hit + pop.miss_mass(policy.n0());
}

OutageReport make_outage_report(const SystemConfig& config, const Popularity& pop,
                                std::span<const double> powers,
                                std::span<const PlacementPolicy> policies) {
  check_population(config, pop);
  if (policies.size() != powers.size()) {
    throw_invalid("make_outage_report: need one policy per grid point");
  }
  OutageReport report;
  report.powers.assign(powers.begin(), powers.end());
  report.policies.assign(policies.begin(), policies.end());
  report.per_file.assign(config.n_files, std::vector<double>(powers.size(), 1.0));
  report.system.resize(powers.size());
  for (std::size_t s = 0; s < powers.size(); ++s) {
    const PlacementPolicy& policy = policies[s];
    validate_policy(policy, config);
    for (std::size_t d = 0; d < policy.n0(); ++d) {
      report.per_file[d][s] = outage_closed_form({config.k_ens, policy.t[d], powers[s], config.rate});
    }
    report.system[s] = system_outage(config, policy, pop, powers[s]);
  }
  return report;
}

std::vector<double> recompose_system(const OutageReport& report, const Popularity& pop) {
  std::vector<double> system(report.powers.size(), 0.0);
  for (std::size_t s = 0; s < system.size(); ++s) {
    const std::size_t n0 = report.policies[s].n0();
    double hit = 0.0;
    for (std::size_t d = 0; d < n0; ++d) hit += pop.probs()[d] * report.per_file[d][s];
    system[s] = hit + pop.miss_mass(n0);
  }
  return system;
}

unsigned hit_diversity(const PlacementPolicy& policy) {
  if (policy.t.empty()) return 0;
  return *std::min_element(policy.t.begin(), policy.t.end());
}

unsigned system_diversity(const PlacementPolicy& policy, std::size_t n_files) {
  if (policy.n0() < n_files) return 0;
  return hit_diversity(policy);
}

}  // namespace edgecache
