// SPDX-License-Identifier: Apache-2.0
#include "edgecache/divided_difference.hpp"

#include <vector>

#include "edgecache/error.hpp"

namespace edgecache {
namespace {

void check_sizes(std::span<const double> nodes, std::span<const double> values) {
  if (nodes.empty() || nodes.size() != values.size()) {
    throw_invalid("divided_difference: need matching, nonempty node and value arrays");
  }
}

}  // namespace

double divided_difference(std::span<const double> nodes, std::span<const double> values) {
  check_sizes(nodes, values);
  std::vector<double> table(values.begin(), values.end());
  const std::size_t n = nodes.size();
  for (std::size_t order = 1; order < n; ++order) {
    for (std::size_t i = n - 1; i >= order; --i) {
      const double gap = nodes[i] - nodes[i - order];
      if (gap == 0.0) throw_invalid("divided_difference: coincident nodes");
      table[i] = (table[i] - table[i - 1]) / gap;
    }
  }
  return table[n - 1];
}

double divided_difference_explicit(std::span<const double> nodes, std::span<const double> values) {
  check_sizes(nodes, values);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double denom = 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) denom *= nodes[i] - nodes[j];
    }
    if (denom == 0.0) throw_invalid("divided_difference_explicit: coincident nodes");
    sum += values[i] / denom;
  }
  return sum;
}

}  // namespace edgecache
