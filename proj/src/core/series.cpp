// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <string>
#include <vector>

#include "edgecache/divided_difference.hpp"
#include "edgecache/error.hpp"
#include "edgecache/outage.hpp"

namespace edgecache {
namespace {

// Running complete homogeneous symmetric polynomials h_k(x_1, ..., x_n).
// prefix_[j] holds h_k(x_1, ..., x_{j+1}) for the current k.
class CompleteHomogeneous {
 public:
  explicit CompleteHomogeneous(std::vector<double> x) : x_(std::move(x)), prefix_(x_.size(), 1.0) {}

  [[nodiscard]] double value() const { return prefix_.back(); }

  void advance() {
    double previous = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      prefix_[j] = previous + x_[j] * prefix_[j];
      previous = prefix_[j];
    }
  }

 private:
  std::vector<double> x_;
  std::vector<double> prefix_;
};

std::vector<double> reciprocal_coefficients(unsigned k_ens, unsigned t_d) {
  std::vector<double> x = partition_coefficients(k_ens, t_d).coeffs;
  for (double& v : x) v = 1.0 / v;
  return x;
}

double product(const std::vector<double>& x) {
  double p = 1.0;
  for (double v : x) p *= v;
  return p;
}

}  // namespace

// For m >= t_d the defining sum is a divided difference of a negative power,
//   [c^(-p) | c_1..c_n] = (-1)^(n-1) prod(1/c_i) h_(p-1)(1/c_1, ..., 1/c_n),
// a sum of positive terms, so no cancellation is involved.
double series_coefficient(unsigned k_ens, unsigned t_d, unsigned m) {
  if (t_d == 0 || t_d >= k_ens) {
    throw_invalid("series_coefficient: requires 1 <= t_d < K (got t_d = " + std::to_string(t_d) +
                  ", K = " + std::to_string(k_ens) + ")");
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double inv_factorial = std::exp(-std::lgamma(m + 1.0));

  if (m < t_d) {
    const std::vector<double> c = partition_coefficients(k_ens, t_d).coeffs;
    std::vector<double> values(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      values[i] = std::pow(c[i], static_cast<double>(t_d - 1 - m));
    }
    return sign * inv_factorial * divided_difference(c, values);
  }

  const std::vector<double> x = reciprocal_coefficients(k_ens, t_d);
  CompleteHomogeneous h(x);
  for (unsigned k = 0; k < m - t_d; ++k) h.advance();
  const double parity = ((t_d - 1) % 2 == 0) ? 1.0 : -1.0;
  const double value = sign * parity * inv_factorial * product(x) * h.value();
  if (!std::isfinite(value)) {
    throw_invalid("series_coefficient: m = " + std::to_string(m) + " out of double range");
  }
  return value;
}

SeriesResult outage_series(const OutageQuery& q, const SeriesOptions& options) {
  q.validate();
  const double threshold = q.threshold();
  if (!(threshold < 1.0)) {
    throw_invalid("outage_series: requires T_1 < 1 (got " + std::to_string(threshold) + ")");
  }
  const unsigned t = q.t_d;
  const unsigned cap = options.truncation == 0 ? t + 199 : options.truncation;
  if (cap < t + 2) {
    throw_invalid("outage_series: truncation must be at least t_d + 2");
  }
  if (threshold == 0.0) return {0.0, 0.0, t};

  const double log_t = std::log(threshold);
  SeriesResult out;

  auto finish = [&](double sum, double next, unsigned order, double bound) -> bool {
    out.value = sum;
    out.last_order = order;
    out.error_bound = bound;
    return next == 0.0 || std::abs(next) < options.rel_tol * std::abs(sum);
  };

  if (t == q.k_ens) {
    // e^(-T) sum_{i >= K} T^i / i!
    double term = std::exp(t * log_t - threshold - std::lgamma(t + 1.0));
    double sum = 0.0;
    for (unsigned i = t; i <= cap; ++i) {
      sum += term;
      const double next = term * threshold / (i + 1);
      const double ratio = threshold / (i + 2);
      if (finish(sum, next, i, next / (1.0 - ratio))) return out;
      term = next;
    }
  } else {
    // sum_{m >= t} (-1)^(m-t) T^m / m! prod(1/c) h_(m-t)(1/c)
    const std::vector<double> x = reciprocal_coefficients(q.k_ens, t);
    const double scale = product(x);
    CompleteHomogeneous h(x);
    double power = std::exp(t * log_t - std::lgamma(t + 1.0));  // T^m / m!
    double sign = 1.0;
    double term = power * scale * h.value();
    double sum = 0.0;
    for (unsigned m = t; m <= cap; ++m) {
      sum += sign * term;
      power *= threshold / (m + 1);
      h.advance();
      sign = -sign;
      const double next = power * scale * h.value();
      if (finish(sum, next, m, next)) return out;
      term = next;
    }
  }
  throw Error(ErrorCode::not_converged,
              "outage_series: no convergence by order " + std::to_string(cap) +
                  " (partial sum " + std::to_string(out.value) + ", next term " +
                  std::to_string(out.error_bound) + ")");
}

}  // namespace edgecache
