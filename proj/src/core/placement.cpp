// SPDX-License-Identifier: Apache-2.0
#include "edgecache/placement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgecache/error.hpp"
#include "edgecache/outage.hpp"

namespace edgecache {
namespace {

class PolicyWalker {
 public:
  PolicyWalker(const SystemConfig& config, const PolicyVisitor& visit, const OptimizerOptions& options)
      : config_(config), visit_(visit), options_(options) {}

  void run() { descend(config_.budget(), config_.k_ens); }

 private:
  [[nodiscard]] bool allowed(unsigned value) const {
    return options_.family == PolicyFamily::partition || value == 1 || value == config_.k_ens;
  }

  // Depth-first over t_(n0+1) given the remaining budget; prefixes that
  // already exceed the budget are never formed.
  void descend(std::size_t remaining, unsigned cap) {
    if (!current_.t.empty()) visit_(current_);
    if (current_.t.size() == config_.n_files) return;
    const auto top = static_cast<unsigned>(std::min<std::size_t>(cap, remaining));
    for (unsigned v = top; v >= 1; --v) {
      if (!allowed(v)) continue;
      current_.t.push_back(v);
      descend(remaining - v, options_.full_enumeration ? config_.k_ens : v);
      current_.t.pop_back();
    }
  }

  const SystemConfig& config_;
  const PolicyVisitor& visit_;
  const OptimizerOptions& options_;
  PlacementPolicy current_;
};

bool better(double a, const PlacementPolicy& pa, double b, const PlacementPolicy& pb) {
  const double tol = 1e-15 * std::max(std::abs(a), std::abs(b));
  if (a < b - tol) return true;
  if (a > b + tol) return false;
  if (pa.n0() != pb.n0()) return pa.n0() > pb.n0();
  return pa.t > pb.t;
}

}  // namespace

void for_each_policy(const SystemConfig& config, const PolicyVisitor& visit,
                     const OptimizerOptions& options) {
  config.validate();
  PolicyWalker(config, visit, options).run();
}

std::vector<PlacementPolicy> enumerate_policies(const SystemConfig& config,
                                                const OptimizerOptions& options) {
  std::vector<PlacementPolicy> out;
  for_each_policy(config, [&](const PlacementPolicy& p) { out.push_back(p); }, options);
  return out;
}

OptimizationResult optimize_placement(const SystemConfig& config, double power,
                                      const OptimizerOptions& options) {
  config.validate();
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw_invalid("optimize_placement: power must be positive");
  }
  const Popularity pop = Popularity::zipf(config.n_files, config.rho);

  // At most K distinct outage values per power point.
  std::vector<double> outage(config.k_ens + 1, 1.0);
  for (unsigned t = 1; t <= config.k_ens; ++t) {
    outage[t] = outage_closed_form({config.k_ens, t, power, config.rate});
  }

  OptimizationResult result;
  result.power = power;
  bool have_best = false;
  for_each_policy(
      config,
      [&](const PlacementPolicy& candidate) {
        ++result.explored;
        double hit = 0.0;
        for (std::size_t d = 0; d < candidate.n0(); ++d) hit += pop.probs()[d] * outage[candidate.t[d]];
        const double objective = hit + pop.miss_mass(candidate.n0());
        if (!have_best || better(objective, candidate, result.objective, result.best)) {
          result.best = candidate;
          result.objective = objective;
          have_best = true;
        }
      },
      options);
  if (!have_best) throw_invalid("optimize_placement: no feasible policy");
  result.objective = system_outage(config, result.best, pop, power);
  return result;
}

SweepResult optimize_sweep(const SystemConfig& config, std::span<const double> powers,
                           const OptimizerOptions& options) {
  if (powers.empty()) throw_invalid("optimize_sweep: empty SNR grid");
  OptimizerOptions baseline_options = options;
  baseline_options.family = PolicyFamily::full_cooperation;

  SweepResult sweep;
  std::vector<PlacementPolicy> proposed_policies;
  std::vector<PlacementPolicy> baseline_policies;
  for (double power : powers) {
    sweep.proposed.push_back(optimize_placement(config, power, options));
    sweep.baseline.push_back(optimize_placement(config, power, baseline_options));
    proposed_policies.push_back(sweep.proposed.back().best);
    baseline_policies.push_back(sweep.baseline.back().best);
  }
  const Popularity pop = Popularity::zipf(config.n_files, config.rho);
  sweep.proposed_report = make_outage_report(config, pop, powers, proposed_policies);
  sweep.baseline_report = make_outage_report(config, pop, powers, baseline_policies);
  return sweep;
}

double uniform_demand_hit_diversity(const SystemConfig& config, std::size_t n0) {
  if (n0 == 0 || n0 > config.n_files) {
    throw_invalid("uniform_demand_hit_diversity: n0 = " + std::to_string(n0) + " outside [1, N]");
  }
  const double k = config.k_ens;
  return std::min(static_cast<double>(config.cache_size) * k / static_cast<double>(n0), k);
}

OutageReport full_cooperation_baseline(const SystemConfig& config, std::span<const double> powers) {
  if (powers.empty()) throw_invalid("full_cooperation_baseline: empty SNR grid");
  OptimizerOptions options;
  options.family = PolicyFamily::full_cooperation;
  std::vector<PlacementPolicy> policies;
  for (double power : powers) policies.push_back(optimize_placement(config, power, options).best);
  return make_outage_report(config, Popularity::zipf(config.n_files, config.rho), powers, policies);
}

}  // namespace edgecache
