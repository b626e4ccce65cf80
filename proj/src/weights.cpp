// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace fovwrs {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

// Shared by cone_density and AcuityWeighter so both produce identical bits.
inline double density_unchecked(double e, const WeightParams& p) noexcept {
  const double bracket =
      p.a_k / ((1.0 + e / p.r_2k) * (1.0 + e / p.r_2k)) + (1.0 - p.a_k) * std::exp(-e / p.r_ek);
  return 2.0 * p.dc0 / (1.0 + e / p.r_m) * bracket;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorKind::kInvalidInput, std::string(name) + " must be positive, got " + std::to_string(v));
  }
}

}  // namespace

void WeightParams::validate() const {
  require_positive(r_2k, "r_2k");
  require_positive(r_ek, "r_ek");
  require_positive(dc0, "dc0");
  require_positive(r_m, "r_m");
  require_positive(r_f, "r_f");
  if (!(a_k > 0.0 && a_k < 1.0)) fail(ErrorKind::kInvalidInput, "a_k must lie in (0,1)");
}

void DisplayGeometry::validate() const {
  if (width_px <= 0 || height_px <= 0) fail(ErrorKind::kInvalidInput, "display size must be positive");
  if (!(horizontal_fov_deg > 0.0 && horizontal_fov_deg < 180.0)) {
    fail(ErrorKind::kInvalidInput, "horizontal_fov_deg must lie in (0,180)");
  }
}

double DisplayGeometry::viewer_distance_px() const noexcept {
  return (width_px / 2.0) / std::tan(horizontal_fov_deg / 2.0 / kDegPerRad);
}

double cone_density(double e, const WeightParams& p) {
  if (!(e >= 0.0)) fail(ErrorKind::kInvalidInput, "eccentricity must be non-negative");
  return density_unchecked(e, p);
}

double acuity_weight(double e, const WeightParams& p) {
  if (!(e >= 0.0)) fail(ErrorKind::kInvalidInput, "eccentricity must be non-negative");
  if (e <= p.r_f) return 1.0;
  return density_unchecked(e, p) / density_unchecked(p.r_f, p);
}

AcuityWeighter::AcuityWeighter(const WeightParams& p)
    : p_(p), fovea_density_(density_unchecked(p.r_f, p)) {
  p_.validate();
}

double AcuityWeighter::operator()(double e) const noexcept {
  if (e <= p_.r_f) return 1.0;
  return density_unchecked(e, p_) / fovea_density_;
}

double eccentricity(PixelPos pixel, PixelPos gaze, const DisplayGeometry& g) noexcept {
  if (g.mapping == AngularMapping::kLinear) {
    const double dx = pixel.x - gaze.x, dy = pixel.y - gaze.y;
    return std::sqrt(dx * dx + dy * dy) / g.pixels_per_degree();
  }
  const double d = g.viewer_distance_px();
  const double cx = (g.width_px - 1) / 2.0;
  const double cy = (g.height_px - 1) / 2.0;
  const double ax = pixel.x - cx, ay = pixel.y - cy;
  const double bx = gaze.x - cx, by = gaze.y - cy;
  // angle = atan2(|a x b|, a . b) with a = (ax, ay, d), b = (bx, by, d)
  const double cxp = ay * d - d * by;
  const double cyp = d * bx - ax * d;
  const double czp = ax * by - ay * bx;
  const double cross = std::sqrt(cxp * cxp + cyp * cyp + czp * czp);
  const double dot = ax * bx + ay * by + d * d;
  return std::atan2(cross, dot) * kDegPerRad;
}

double max_eccentricity(PixelPos gaze, const DisplayGeometry& g) noexcept {
  const double xs[2] = {0.0, static_cast<double>(g.width_px - 1)};
  const double ys[2] = {0.0, static_cast<double>(g.height_px - 1)};
  double best = 0.0;
  for (double x : xs) {
    for (double y : ys) best = std::max(best, eccentricity({x, y}, gaze, g));
  }
  return best;
}

}  // namespace fovwrs
