// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace fovwrs {

RandomDraw::RandomDraw(double u) : u_(u) {
  if (!(u >= 0.0 && u < 1.0)) {
    fail(ErrorKind::kInvalidInput, "random draw outside [0,1): " + std::to_string(u));
  }
}

RandomDraw RandomDraw::from_bits(std::uint64_t bits) noexcept {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return RandomDraw(static_cast<double>(bits >> 11) * kScale, Unchecked{});
}

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t CounterRng::bits(std::uint64_t frame, std::uint64_t pixel,
                               std::uint32_t counter) const noexcept {
  // Counter words: pixel (low, high), frame (low), counter mixed with frame high.
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(pixel), static_cast<std::uint32_t>(pixel >> 32),
      static_cast<std::uint32_t>(frame),
      counter ^ (static_cast<std::uint32_t>(frame >> 32) * 0x85EBCA6Bu)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32(ctr, key);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::array<double, 2> CounterRng::normal_pair(std::uint64_t frame, std::uint64_t pixel,
                                              std::uint32_t counter) const noexcept {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(pixel), static_cast<std::uint32_t>(pixel >> 32),
      static_cast<std::uint32_t>(frame), counter ^ 0x5BD1E995u};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32(ctr, key);
  const double u1 =
      1.0 - RandomDraw::from_bits((static_cast<std::uint64_t>(out[0]) << 32) | out[1]).value();
  const double u2 =
      RandomDraw::from_bits((static_cast<std::uint64_t>(out[2]) << 32) | out[3]).value();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace fovwrs
