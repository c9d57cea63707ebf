// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edgecache {

/// File-request distribution over an N-file library.
///
/// Files are 1-indexed in the public accessors (`prob(1)` is the most popular
/// file); storage is 0-indexed. Suffix sums are kept so the cache-miss tail
/// mass is summed smallest-first instead of formed as `1 - prefix`.
class Popularity {
 public:
  [[nodiscard]] static Popularity zipf(std::size_t n_files, double rho);

  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] double prob(std::size_t file) const;
  [[nodiscard]] std::size_t n_files() const noexcept { return probs_.size(); }
  [[nodiscard]] double rho() const noexcept { return rho_; }

  /// Probability that the request falls outside the first `n0` files.
  [[nodiscard]] double miss_mass(std::size_t n0) const;

 private:
  Popularity(std::vector<double> probs, double rho);

  std::vector<double> probs_;
  std::vector<double> tail_;  // tail_[i] = sum of probs_[i..N)
  double rho_ = 0.0;
};

[[nodiscard]] Popularity zipf_popularity(std::size_t n_files, double rho);
[[nodiscard]] double miss_mass(const Popularity& pop, std::size_t n0);

}  // namespace edgecache
