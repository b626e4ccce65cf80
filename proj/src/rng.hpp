// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace fovwrs {

/// Uniform variate in [0, 1). All randomness in the library enters through
/// values of this type so that every operation is a pure function of its inputs.
class RandomDraw {
 public:
  /// Throws kInvalidInput unless 0 <= u < 1.
  explicit RandomDraw(double u);

  /// Top 53 bits of `bits` scaled into [0, 1).
  static RandomDraw from_bits(std::uint64_t bits) noexcept;

  double value() const noexcept { return u_; }

 private:
  struct Unchecked {};
  RandomDraw(double u, Unchecked) noexcept : u_(u) {}
  double u_;
};

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream: the draw for (frame, pixel, counter) depends only on
/// those values and the seed, never on evaluation order or thread layout.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t bits(std::uint64_t frame, std::uint64_t pixel, std::uint32_t counter) const noexcept;
  RandomDraw draw(std::uint64_t frame, std::uint64_t pixel, std::uint32_t counter = 0) const noexcept {
    return RandomDraw::from_bits(bits(frame, pixel, counter));
  }
  /// Standard normal pair via Box-Muller on two draws from the same counter block.
  std::array<double, 2> normal_pair(std::uint64_t frame, std::uint64_t pixel,
                                    std::uint32_t counter) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace fovwrs
