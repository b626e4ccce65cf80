// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "image.hpp"
#include "weights.hpp"

namespace fovwrs {

enum class FoveationMethod { kMipBilinear, kGaussian };

struct FoveationConfig {
  FoveationMethod method = FoveationMethod::kMipBilinear;
  double r_f = 2.5;          // fovea radius, degrees
  double mid_radius = 7.5;   // outer edge of the mid periphery, degrees
  std::int32_t mid_block = 8;
  std::int32_t far_block = 16;
  double blend_deg = 1.0;
  double sigma_max = 12.0;   // pixels, gaussian method only

  void validate() const;
};

enum class Region : std::uint8_t { kFovea = 0, kMid = 1, kFar = 2 };

struct RegionBlend {
  Region inner = Region::kFovea;
  Region outer = Region::kFovea;
  double t = 0.0;  // 0 = inner result, 1 = outer result

  friend bool operator==(const RegionBlend&, const RegionBlend&) = default;
};

/// Which region results contribute at eccentricity `e` and with what mix.
///
/// The mid/far band is centered on mid_radius. The fovea/mid band starts at
/// r_f and extends blend_deg outward so the closed fovea disk is never blended.
RegionBlend region_blend(double e, const FoveationConfig& cfg);

/// Box average over an origin-anchored block grid; partial edge blocks average
/// the pixels they contain.
Image block_means(const Image& frame, std::int32_t block);

/// Texture-style bilinear sample of a block-mean grid at pixel (x, y),
/// clamping to the outermost block centers.
Rgb sample_bilinear(const Image& grid, std::int32_t block, std::int32_t x, std::int32_t y) noexcept;

/// Simulated foveated rendering as a postprocess of a full-resolution frame.
/// Throws kInvalidInput when the frame does not match the geometry.
Image foveate(const Image& frame, PixelPos gaze, const FoveationConfig& cfg,
              const DisplayGeometry& geom, int threads = 1);

}  // namespace fovwrs
