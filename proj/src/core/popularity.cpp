// SPDX-License-Identifier: Apache-2.0
#include "edgecache/popularity.hpp"

#include <cmath>
#include <string>

#include "edgecache/error.hpp"

namespace edgecache {

Popularity::Popularity(std::vector<double> probs, double rho)
    : probs_(std::move(probs)), tail_(probs_.size() + 1, 0.0), rho_(rho) {
  for (std::size_t i = probs_.size(); i-- > 0;) {
    tail_[i] = tail_[i + 1] + probs_[i];
  }
}

Popularity Popularity::zipf(std::size_t n_files, double rho) {
  if (n_files == 0) throw_invalid("zipf_popularity: n_files must be at least 1");
  if (!std::isfinite(rho) || rho < 0.0) {
    throw_invalid("zipf_popularity: rho must be finite and nonnegative");
  }
  std::vector<double> weights(n_files);
  for (std::size_t i = 0; i < n_files; ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -rho);
  }
  // Sum from the smallest weight up.
  double norm = 0.0;
  for (std::size_t i = n_files; i-- > 0;) norm += weights[i];
  for (double& w : weights) w /= norm;
  return Popularity(std::move(weights), rho);
}

double Popularity::prob(std::size_t file) const {
  if (file == 0 || file > probs_.size()) {
    throw_invalid("Popularity::prob: file index " + std::to_string(file) + " outside [1, " +
                  std::to_string(probs_.size()) + "]");
  }
  return probs_[file - 1];
}

double Popularity::miss_mass(std::size_t n0) const {
  if (n0 > probs_.size()) {
    throw_invalid("miss_mass: n0 = " + std::to_string(n0) + " exceeds N = " +
                  std::to_string(probs_.size()));
  }
  if (n0 == 0) return 1.0;
  return tail_[n0];
}

Popularity zipf_popularity(std::size_t n_files, double rho) { return Popularity::zipf(n_files, rho); }

double miss_mass(const Popularity& pop, std::size_t n0) { return pop.miss_mass(n0); }

}  // namespace edgecache
