// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace edgecache {

/// Highest-order divided difference [f | x_0, ..., x_r] from the Newton table.
/// `nodes` must be pairwise distinct; `values[i] = f(nodes[i])`.
[[nodiscard]] double divided_difference(std::span<const double> nodes,
                                        std::span<const double> values);

/// Same quantity from the explicit partial-fraction sum
///   sum_i f(x_i) / prod_{j != i} (x_i - x_j).
[[nodiscard]] double divided_difference_explicit(std::span<const double> nodes,
                                                 std::span<const double> values);

}  // namespace edgecache
