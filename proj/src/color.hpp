// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "image.hpp"

namespace fovwrs {

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// sRGB transfer function inverse, input clamped to [0,1].
double srgb_to_linear(double c) noexcept;

/// CIELAB (D65) of an sRGB-encoded color.
Lab srgb_to_lab(const Rgb& c) noexcept;

/// |L*(a) - L*(b)| / 100, clamped to [0,1].
double delta_l(const Rgb& a, const Rgb& b) noexcept;

/// CIE94 color difference (graphic arts constants) / 100, clamped to [0,1].
double delta_e94(const Rgb& a, const Rgb& b) noexcept;

/// Table-driven L* used inside the per-pixel loop. Agrees with
/// srgb_to_lab(c).l to within 1e-3 L* units over [0,1]^3.
class LightnessLut {
 public:
  LightnessLut();
  float operator()(const Rgb& c) const noexcept;

 private:
  float decode(float v) const noexcept;
  float lightness_of_y(float y) const noexcept;

  std::vector<float> decode_;
  std::vector<float> lstar_;
};

}  // namespace fovwrs
