// SPDX-License-Identifier: Apache-2.0
#include "edgecache/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "edgecache/divided_difference.hpp"
#include "edgecache/error.hpp"

namespace edgecache {

double OutageQuery::threshold() const { return std::expm1(rate * std::numbers::ln2) / power; }

void OutageQuery::validate() const {
  if (k_ens == 0) throw_invalid("OutageQuery: K must be at least 1");
  if (t_d == 0 || t_d > k_ens) {
    throw_invalid("OutageQuery: t_d = " + std::to_string(t_d) + " outside [1, " +
                  std::to_string(k_ens) + "]");
  }
  if (!(power > 0.0) || !std::isfinite(power)) throw_invalid("OutageQuery: power must be positive");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw_invalid("OutageQuery: rate must be positive");
}

PartitionCoefficients partition_coefficients(unsigned k_ens, unsigned t_d) {
  if (t_d == 0 || t_d > k_ens) {
    throw_invalid("partition_coefficients: t_d = " + std::to_string(t_d) + " outside [1, K = " +
                  std::to_string(k_ens) + "]");
  }
  PartitionCoefficients out{{}, k_ens, t_d};
  out.coeffs.reserve(t_d);
  for (unsigned k = 1; k <= t_d; ++k) {
    out.coeffs.push_back(static_cast<double>(t_d - k + 1) / static_cast<double>(k_ens - k + 1));
  }
  return out;
}

namespace {

constexpr double kMinRelativeGap = 1e-9;

void check_coefficients(std::span<const double> coeffs) {
  if (coeffs.empty()) throw_invalid("hypoexp_cdf: empty coefficient list");
  for (double c : coeffs) {
    if (!(c > 0.0) || !std::isfinite(c)) throw_invalid("hypoexp_cdf: coefficients must be positive");
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t j = i + 1; j < coeffs.size(); ++j) {
      const double scale = std::max(coeffs[i], coeffs[j]);
      if (std::abs(coeffs[i] - coeffs[j]) <= kMinRelativeGap * scale) {
        throw_invalid("hypoexp_cdf: coincident coefficients; use gamma_sum_cdf for equal weights");
      }
    }
  }
}

}  // namespace

HypoexpEvaluation evaluate_hypoexp(std::span<const double> coeffs, double threshold) {
  check_coefficients(coeffs);
  if (std::isnan(threshold) || threshold < 0.0) {
    throw_invalid("hypoexp_cdf: threshold must be nonnegative");
  }
  if (threshold == 0.0) return {0.0, 0.0, 1.0};
  if (std::isinf(threshold)) return {1.0, 1.0, 1.0};

  // P(sum c_i Z_i < T) = 1 - [z^(n-1) e^(-T/z) | z = c_1, ..., c_n].
  const std::size_t n = coeffs.size();
  std::vector<double> values(n);
  double abs_terms = 0.0;
  double explicit_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = coeffs[i];
    values[i] = std::pow(c, static_cast<double>(n - 1)) * std::exp(-threshold / c);
    double denom = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom *= c - coeffs[j];
    }
    const double w = values[i] / denom;
    explicit_sum += w;
    abs_terms += std::abs(w);
  }
  const double table = divided_difference(coeffs, values);

  HypoexpEvaluation out;
  const double raw = 1.0 - table;
  out.condition = raw > 0.0 ? (1.0 + abs_terms) / raw : std::numeric_limits<double>::infinity();
  out.cdf = std::clamp(raw, 0.0, 1.0);
  out.cdf_explicit = std::clamp(1.0 - explicit_sum, 0.0, 1.0);
  return out;
}

double hypoexp_cdf(std::span<const double> coeffs, double threshold, const HypoexpOptions& options) {
  const HypoexpEvaluation eval = evaluate_hypoexp(coeffs, threshold);
  if (eval.condition > options.max_condition) {
    throw Error(ErrorCode::precision_loss,
                "hypoexp_cdf: condition estimate " + std::to_string(eval.condition) +
                    " exceeds bound " + std::to_string(options.max_condition) +
                    " at threshold " + std::to_string(threshold));
  }
  return eval.cdf;
}

double gamma_sum_cdf(unsigned k_ens, double threshold) {
  if (k_ens == 0) throw_invalid("gamma_sum_cdf: K must be at least 1");
  if (std::isnan(threshold) || threshold < 0.0) {
    throw_invalid("gamma_sum_cdf: threshold must be nonnegative");
  }
  if (threshold == 0.0) return 0.0;
  if (std::isinf(threshold)) return 1.0;

  const double k = k_ens;
  const double log_t = std::log(threshold);
  if (threshold < k + 1.0) {
    // e^(-T) sum_{i >= K} T^i / i!, factored around the leading term.
    const double lead = std::exp(k * log_t - threshold - std::lgamma(k + 1.0));
    double term = 1.0;
    double sum = 1.0;
    for (unsigned j = 1; j < 10000; ++j) {
      term *= threshold / (k + j);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::min(1.0, lead * sum);
  }
  // 1 - e^(-T) sum_{i < K} T^i / i!
  double upper = 0.0;
  for (unsigned i = 0; i < k_ens; ++i) {
    upper += std::exp(i * log_t - threshold - std::lgamma(i + 1.0));
  }
  return std::clamp(1.0 - upper, 0.0, 1.0);
}

double outage_closed_form(const OutageQuery& q) {
  q.validate();
  const double threshold = q.threshold();
  if (q.t_d == q.k_ens) return gamma_sum_cdf(q.k_ens, threshold);

  const PartitionCoefficients pc = partition_coefficients(q.k_ens, q.t_d);
  const HypoexpEvaluation eval = evaluate_hypoexp(pc.coeffs, threshold);
  if (eval.condition <= HypoexpOptions{}.max_condition) return eval.cdf;
  if (threshold < 1.0) return outage_series(q).value;
  throw Error(ErrorCode::precision_loss,
              "outage_closed_form: closed form ill-conditioned and threshold outside the series "
              "region (K = " + std::to_string(q.k_ens) + ", t_d = " + std::to_string(q.t_d) + ")");
}

double diversity_fit(std::span<const double> snr_db, std::span<const double> outage) {
  if (snr_db.size() != outage.size() || snr_db.size() < 2) {
    throw_invalid("diversity_fit: need at least two matching grid points");
  }
  const auto n = static_cast<double>(snr_db.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    if (!(outage[i] > 0.0) || !std::isfinite(outage[i])) {
      throw_invalid("diversity_fit: outage values must be positive");
    }
    mean_x += snr_db[i] / 10.0;
    mean_y += std::log10(outage[i]);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    const double dx = snr_db[i] / 10.0 - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log10(outage[i]) - mean_y);
  }
  if (sxx == 0.0) throw_invalid("diversity_fit: SNR grid has no spread");
  return -sxy / sxx;
}

}  // namespace edgecache
