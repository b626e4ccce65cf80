// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace fovwrs {

/// Cone-density model constants (Watson 2014) and the fovea radius used to
/// normalize candidate weights.
struct WeightParams {
  double a_k = 0.9851;
  double r_2k = 1.058;      // degrees
  double r_ek = 22.14;      // degrees
  double dc0 = 14804.6;     // cones / deg^2
  double r_m = 41.03;       // degrees
  double r_f = 2.5;         // fovea radius, degrees

  /// Throws kInvalidInput when any constant is non-positive or a_k is outside (0,1).
  void validate() const;
};

enum class AngularMapping { kLinear, kPerspective };

struct DisplayGeometry {
  std::int32_t width_px = 1280;
  std::int32_t height_px = 720;
  double horizontal_fov_deg = 80.0;
  AngularMapping mapping = AngularMapping::kLinear;

  void validate() const;
  double pixels_per_degree() const noexcept { return width_px / horizontal_fov_deg; }
  /// Eye-to-screen distance in pixels for the perspective mapping.
  double viewer_distance_px() const noexcept;
};

struct PixelPos {
  double x = 0.0;
  double y = 0.0;
};

/// Receptor density at eccentricity `e` degrees. Throws on negative e.
double cone_density(double e, const WeightParams& p);

/// 1 inside the closed fovea disk, d(e) / d(r_f) outside.
double acuity_weight(double e, const WeightParams& p);

/// Angular distance in degrees between a pixel and the gaze point.
double eccentricity(PixelPos pixel, PixelPos gaze, const DisplayGeometry& g) noexcept;

/// Largest eccentricity of any pixel in the frame for this gaze.
double max_eccentricity(PixelPos gaze, const DisplayGeometry& g) noexcept;

/// Precomputed evaluator for the pipeline's per-pixel weight. Results equal
/// acuity_weight() exactly; only the constant d(r_f) is hoisted.
class AcuityWeighter {
 public:
  explicit AcuityWeighter(const WeightParams& p);
  double operator()(double e) const noexcept;
  const WeightParams& params() const noexcept { return p_; }

 private:
  WeightParams p_;
  double fovea_density_;
};

}  // namespace fovwrs
