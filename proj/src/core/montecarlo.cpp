// SPDX-License-Identifier: Apache-2.0
#include "edgecache/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "edgecache/error.hpp"
#include "edgecache/philox.hpp"

namespace edgecache {
namespace {

unsigned resolve_workers(const McOptions& options, std::uint64_t trials) {
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);
  if (trials < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, trials));
  return workers;
}

// Runs body(begin, end) over contiguous trial ranges, one range per worker.
template <class Body>
void parallel_ranges(std::uint64_t trials, const McOptions& options, Body body) {
  const unsigned workers = resolve_workers(options, trials);
  if (workers == 1) {
    body(std::uint64_t{0}, trials, 0u);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = trials / workers;
  const std::uint64_t extra = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([=] { body(begin, end, w); });
    begin = end;
  }
}

template <class Event>
std::uint64_t count_events(std::uint64_t trials, const McOptions& options, Event event) {
  const unsigned workers = resolve_workers(options, trials);
  std::vector<std::uint64_t> counts(workers, 0);
  parallel_ranges(trials, options, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) local += event(i) ? 1 : 0;
    counts[w] = local;
  });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return total;
}

template <class Event>
std::vector<std::uint8_t> collect_indicators(std::uint64_t trials, const McOptions& options,
                                             Event event) {
  std::vector<std::uint8_t> out(trials, 0);
  parallel_ranges(trials, options, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t i = begin; i < end; ++i) out[i] = event(i) ? 1 : 0;
  });
  return out;
}

McEstimate make_estimate(std::uint64_t events, std::uint64_t trials, std::uint64_t seed) {
  McEstimate est;
  est.trials = trials;
  est.events = events;
  est.seed = seed;
  est.mean = static_cast<double>(events) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw_invalid("Monte Carlo: trials must be at least 1");
}

double exponential_from(std::uint64_t word) { return -std::log(TrialStream::to_unit_open_closed(word)); }

// Sum of the t smallest entries of `x` (reorders `x`).
double smallest_sum(std::span<double> x, unsigned t) {
  if (t < x.size()) std::nth_element(x.begin(), x.begin() + (t - 1), x.end());
  double sum = 0.0;
  for (unsigned k = 0; k < t; ++k) sum += x[k];
  return sum;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t result = 1;
  k = std::min(k, n - k);
  for (unsigned i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint32_t>::max()) return result;
  }
  return result;
}

constexpr unsigned kStackEns = 64;

// Order-statistic outage event for one trial; uses a stack buffer for small K.
bool order_statistic_event(std::uint64_t seed, std::uint64_t trial, unsigned k_ens, unsigned t_d,
                           double threshold) {
  if (k_ens <= kStackEns) {
    std::array<double, kStackEns> buffer{};
    std::span<double> x(buffer.data(), k_ens);
    draw_channel_powers(seed, trial, x);
    return smallest_sum(x, t_d) < threshold;
  }
  std::vector<double> x(k_ens);
  draw_channel_powers(seed, trial, x);
  return smallest_sum(x, t_d) < threshold;
}

}  // namespace

double McEstimate::z_score(double expected) const {
  const double sd = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  const double diff = mean - expected;
  if (sd == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / sd;
}

void draw_channel_powers(std::uint64_t seed, std::uint64_t trial, std::span<double> out) {
  const TrialStream stream(seed, trial, kChannelStream);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = exponential_from(stream.block(static_cast<std::uint32_t>(k))[0]);
  }
}

ChannelDraw draw_channel(std::uint64_t seed, std::uint64_t trial, unsigned k_ens) {
  const TrialStream stream(seed, trial, kChannelStream);
  ChannelDraw draw;
  draw.gains.reserve(k_ens);
  for (unsigned k = 0; k < k_ens; ++k) {
    const auto words = stream.block(k);
    // Box-Muller with each component N(0, 1/2): |g|^2 = -ln(u1).
    const double radius = std::sqrt(exponential_from(words[0]));
    const double angle = 2.0 * std::numbers::pi * TrialStream::to_unit_open_closed(words[1]);
    draw.gains.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return draw;
}

std::vector<std::uint8_t> outage_indicators(const OutageQuery& q, std::uint64_t trials,
                                            std::uint64_t seed, const McOptions& options) {
  q.validate();
  const double threshold = q.threshold();
  return collect_indicators(trials, options, [&](std::uint64_t i) {
    return order_statistic_event(seed, i, q.k_ens, q.t_d, threshold);
  });
}

namespace {

bool subsets_event(const OutageQuery& q, std::uint64_t seed, std::uint64_t trial) {
  const ChannelDraw draw = draw_channel(seed, trial, q.k_ens);
  std::vector<double> gain2(q.k_ens);
  for (unsigned k = 0; k < q.k_ens; ++k) gain2[k] = std::norm(draw.gains[k]);

  // Walk all t_d-subsets via permutations of a selection mask.
  std::vector<bool> mask(q.k_ens, false);
  std::fill(mask.begin(), mask.begin() + q.t_d, true);
  double min_rate = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (unsigned k = 0; k < q.k_ens; ++k) {
      if (mask[k]) s += gain2[k];
    }
    min_rate = std::min(min_rate, std::log2(1.0 + s * q.power));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return min_rate < q.rate;
}

void check_subset_guard(const OutageQuery& q) {
  q.validate();
  const std::uint64_t subsets = binomial(q.k_ens, q.t_d);
  if (subsets > kMaxSubsets) {
    throw_invalid("mc_outage_subsets: C(" + std::to_string(q.k_ens) + ", " +
                  std::to_string(q.t_d) + ") = " + std::to_string(subsets) +
                  " subsets exceeds the enumeration guard of " + std::to_string(kMaxSubsets));
  }
}

}  // namespace

std::vector<std::uint8_t> outage_subsets_indicators(const OutageQuery& q, std::uint64_t trials,
                                                    std::uint64_t seed, const McOptions& options) {
  check_subset_guard(q);
  return collect_indicators(trials, options,
                            [&](std::uint64_t i) { return subsets_event(q, seed, i); });
}

McEstimate mc_outage(const OutageQuery& q, std::uint64_t trials, std::uint64_t seed,
                     const McOptions& options) {
  check_trials(trials);
  q.validate();
  const double threshold = q.threshold();
  const std::uint64_t events = count_events(trials, options, [&](std::uint64_t i) {
    return order_statistic_event(seed, i, q.k_ens, q.t_d, threshold);
  });
  return make_estimate(events, trials, seed);
}

McEstimate mc_outage_subsets(const OutageQuery& q, std::uint64_t trials, std::uint64_t seed,
                             const McOptions& options) {
  check_trials(trials);
  check_subset_guard(q);
  const std::uint64_t events =
      count_events(trials, options, [&](std::uint64_t i) { return subsets_event(q, seed, i); });
  return make_estimate(events, trials, seed);
}

std::vector<double> sample_ordered_renyi(unsigned k_ens, std::uint64_t seed, std::uint64_t draw) {
  if (k_ens == 0) throw_invalid("sample_ordered_renyi: K must be at least 1");
  const TrialStream stream(seed, draw, kRenyiStream);
  std::vector<double> out(k_ens);
  double running = 0.0;
  for (unsigned i = 0; i < k_ens; ++i) {
    running += exponential_from(stream.block(i)[0]) / static_cast<double>(k_ens - i);
    out[i] = running;
  }
  return out;
}

McEstimate mc_system_outage(const SystemConfig& config, const PlacementPolicy& policy, double power,
                            std::uint64_t trials, std::uint64_t seed, const McOptions& options) {
  check_trials(trials);
  validate_policy(policy, config);
  if (!(power > 0.0)) throw_invalid("mc_system_outage: power must be positive");
  const Popularity pop = Popularity::zipf(config.n_files, config.rho);

  std::vector<double> cdf(pop.n_files());
  double running = 0.0;
  for (std::size_t d = 0; d < cdf.size(); ++d) {
    running += pop.probs()[d];
    cdf[d] = running;
  }
  cdf.back() = 1.0;

  const double threshold = OutageQuery{config.k_ens, 1, power, config.rate}.threshold();
  const std::uint64_t events = count_events(trials, options, [&](std::uint64_t i) {
    const double u = TrialStream::to_unit_open_closed(
        TrialStream(seed, i, kRequestStream).block(0)[0]);
    const auto file = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) -
                                               cdf.begin());
    if (file >= policy.n0()) return true;
    return order_statistic_event(seed, i, config.k_ens, policy.t[file], threshold);
  });
  return make_estimate(events, trials, seed);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw_invalid("ks_statistic: samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw_invalid("ks_critical_value: need nonempty samples and alpha in (0, 1)");
  }
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace edgecache
