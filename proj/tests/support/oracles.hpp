// SPDX-License-Identifier: Apache-2.0
// Test-only reference implementations. Nothing here calls into the library's
// numerical paths; each oracle takes a different route to the same quantity.
#pragma once

#include <algorithm>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Wide = boost::multiprecision::cpp_bin_float_100;

inline std::vector<Rational> partition_coefficients(unsigned k_ens, unsigned t_d) {
  std::vector<Rational> c;
  for (unsigned k = 1; k <= t_d; ++k) c.emplace_back(Rational(t_d - k + 1) / (k_ens - k + 1));
  return c;
}

inline Rational rational_pow(const Rational& x, int e) {
  Rational r = 1;
  const Rational base = e >= 0 ? x : Rational(1) / x;
  for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
  return r;
}

/// f(t_d, m) from its defining partial-fraction sum, in exact arithmetic.
inline Rational series_coefficient(unsigned k_ens, unsigned t_d, unsigned m) {
  const auto c = partition_coefficients(k_ens, t_d);
  Rational sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational denom = 1;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i) denom *= c[i] - c[j];
    }
    sum += rational_pow(c[i], static_cast<int>(t_d) - 1 - static_cast<int>(m)) / denom;
  }
  boost::multiprecision::cpp_int factorial = 1;
  for (unsigned i = 2; i <= m; ++i) factorial *= i;
  return (m % 2 == 0 ? sum : -sum) / Rational(factorial);
}

/// Closed-form outage (t_d < K) by the explicit partial-fraction sum in
/// 100-digit arithmetic, so cancellation is harmless.
inline double outage_extended(unsigned k_ens, unsigned t_d, double power, double rate) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  const Wide threshold = (pow(Wide(2), Wide(rate)) - 1) / Wide(power);
  std::vector<Wide> c;
  for (unsigned k = 1; k <= t_d; ++k) c.emplace_back(Wide(t_d - k + 1) / Wide(k_ens - k + 1));
  Wide sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Wide denom = 1;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i) denom *= c[i] - c[j];
    }
    sum += pow(c[i], static_cast<int>(t_d) - 1) * exp(-threshold / c[i]) / denom;
  }
  return static_cast<double>(Wide(1) - sum);
}

/// Ordered sample by sorting K iid exponentials from an independent engine.
inline std::vector<double> sorted_exponentials(unsigned k_ens, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(k_ens);
  for (double& v : x) v = exp1(rng);
  std::sort(x.begin(), x.end());
  return x;
}

/// Number of partitions of exactly j units into at most `parts` parts, each at
/// most `max_part` (Gaussian binomial recurrence).
inline std::uint64_t bounded_partitions(std::size_t j, std::size_t parts, std::size_t max_part) {
  if (j == 0) return 1;
  if (parts == 0 || max_part == 0) return 0;
  std::uint64_t total = bounded_partitions(j, parts, max_part - 1);
  if (j >= max_part) total += bounded_partitions(j - max_part, parts - 1, max_part);
  return total;
}

/// Every vector t with 1 <= n0 <= n_files, t_i in [1, k], sum t_i <= budget,
/// in any order (odometer walk).
inline void for_each_vector(unsigned k, std::size_t n_files, std::size_t budget,
                            const std::function<void(const std::vector<unsigned>&)>& visit) {
  for (std::size_t n0 = 1; n0 <= n_files; ++n0) {
    std::vector<unsigned> t(n0, 1);
    while (true) {
      std::size_t sum = 0;
      for (unsigned v : t) sum += v;
      if (sum <= budget) visit(t);
      std::size_t pos = 0;
      while (pos < n0 && t[pos] == k) t[pos++] = 1;
      if (pos == n0) break;
      ++t[pos];
    }
  }
}

}  // namespace oracle
