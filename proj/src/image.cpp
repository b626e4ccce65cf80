// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "image.hpp"

#include <algorithm>
#include <cmath>

namespace fovwrs {

Plane<float> luma(const Image& img) {
  Plane<float> out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb& c = img[i];
    out[i] = 0.2126f * c.r + 0.7152f * c.g + 0.0722f * c.b;
  }
  return out;
}

namespace {
inline std::uint8_t quantize8(float v) noexcept {
  const float c = std::clamp(v, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::floor(c * 255.0f + 0.5f));
}
}  // namespace

std::vector<std::uint8_t> to_rgb8(const Image& img) {
  std::vector<std::uint8_t> out(img.size() * 3);
  for (std::size_t i = 0; i < img.size(); ++i) {
    out[3 * i + 0] = quantize8(img[i].r);
    out[3 * i + 1] = quantize8(img[i].g);
    out[3 * i + 2] = quantize8(img[i].b);
  }
  return out;
}

std::uint64_t frame_hash(const Image& img) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(img.width() >> shift));
  for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(img.height() >> shift));
  for (std::uint8_t byte : to_rgb8(img)) mix(byte);
  return h;
}

}  // namespace fovwrs
