// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace edgecache {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Pure function
/// of (counter, key); no state.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  [[nodiscard]] static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Random stream of one Monte Carlo trial. Block `b` of substream `tag` for
/// trial `i` is Philox(ctr = {i_lo, i_hi, b, tag}, key = seed); every block
/// yields two 64-bit words, so the draws of a trial depend only on
/// (seed, trial, tag) and never on scheduling.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t tag) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        trial_(trial),
        tag_(tag) {}

  /// Two independent 64-bit words of block `block`.
  [[nodiscard]] std::array<std::uint64_t, 2> block(std::uint32_t block) const noexcept {
    const auto out = Philox4x32::generate(
        {static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32), block, tag_},
        key_);
    return {(std::uint64_t{out[0]} << 32) | out[1], (std::uint64_t{out[2]} << 32) | out[3]};
  }

  /// Uniform in (0, 1]: 53 random bits, offset by one ulp so 0 never occurs.
  [[nodiscard]] static double to_unit_open_closed(std::uint64_t word) noexcept {
    return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t trial_;
  std::uint32_t tag_;
};

}  // namespace edgecache
