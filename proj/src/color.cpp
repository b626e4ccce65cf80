// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "color.hpp"

#include <algorithm>
#include <cmath>

namespace fovwrs {

namespace {

// D65 reference white, XYZ scaled so Y_n = 1.
constexpr double kXn = 0.95047;
constexpr double kZn = 1.08883;
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

inline double lab_f(double t) noexcept {
  return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

inline double lightness_from_y(double y) noexcept { return 116.0 * lab_f(y) - 16.0; }

constexpr int kDecodeSize = 4096;
constexpr int kLstarSize = 16384;

}  // namespace

double srgb_to_linear(double c) noexcept {
  c = std::clamp(c, 0.0, 1.0);
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

Lab srgb_to_lab(const Rgb& c) noexcept {
  const double r = srgb_to_linear(c.r), g = srgb_to_linear(c.g), b = srgb_to_linear(c.b);
  const double x = 0.4124 * r + 0.3576 * g + 0.1805 * b;
  const double y = 0.2126 * r + 0.7152 * g + 0.0722 * b;
  const double z = 0.0193 * r + 0.1192 * g + 0.9505 * b;
  const double fx = lab_f(x / kXn), fy = lab_f(y), fz = lab_f(z / kZn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_l(const Rgb& a, const Rgb& b) noexcept {
  const double d = std::abs(srgb_to_lab(a).l - srgb_to_lab(b).l) / 100.0;
  return std::clamp(d, 0.0, 1.0);
}

double delta_e94(const Rgb& a, const Rgb& b) noexcept {
  const Lab p = srgb_to_lab(a), q = srgb_to_lab(b);
  const double dl = p.l - q.l;
  const double c1 = std::hypot(p.a, p.b), c2 = std::hypot(q.a, q.b);
  const double dc = c1 - c2;
  const double da = p.a - q.a, db = p.b - q.b;
  const double dh2 = std::max(0.0, da * da + db * db - dc * dc);
  const double sc = 1.0 + 0.045 * c1;
  const double sh = 1.0 + 0.015 * c1;
  const double de = std::sqrt(dl * dl + (dc / sc) * (dc / sc) + dh2 / (sh * sh));
  return std::clamp(de / 100.0, 0.0, 1.0);
}

LightnessLut::LightnessLut() : decode_(kDecodeSize + 1), lstar_(kLstarSize + 1) {
  for (int i = 0; i <= kDecodeSize; ++i) {
    decode_[static_cast<std::size_t>(i)] = static_cast<float>(srgb_to_linear(double(i) / kDecodeSize));
  }
  for (int i = 0; i <= kLstarSize; ++i) {
    lstar_[static_cast<std::size_t>(i)] = static_cast<float>(lightness_from_y(double(i) / kLstarSize));
  }
}

float LightnessLut::decode(float v) const noexcept {
  const float t = std::clamp(v, 0.0f, 1.0f) * kDecodeSize;
  const int i = std::min(static_cast<int>(t), kDecodeSize - 1);
  const float f = t - static_cast<float>(i);
  return decode_[static_cast<std::size_t>(i)] + f * (decode_[static_cast<std::size_t>(i) + 1] - decode_[static_cast<std::size_t>(i)]);
}

float LightnessLut::lightness_of_y(float y) const noexcept {
  const float t = std::clamp(y, 0.0f, 1.0f) * kLstarSize;
  const int i = std::min(static_cast<int>(t), kLstarSize - 1);
  const float f = t - static_cast<float>(i);
  return lstar_[static_cast<std::size_t>(i)] + f * (lstar_[static_cast<std::size_t>(i) + 1] - lstar_[static_cast<std::size_t>(i)]);
}

float LightnessLut::operator()(const Rgb& c) const noexcept {
  const float y = 0.2126f * decode(c.r) + 0.7152f * decode(c.g) + 0.0722f * decode(c.b);
  return lightness_of_y(y);
}

}  // namespace fovwrs
