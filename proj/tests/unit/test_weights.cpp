// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "errors.hpp"
#include "weights.hpp"

namespace fovwrs {
namespace {

// Receptor density at e = 0, 0.5, ..., 40 degrees, evaluated at 30 digits with mpmath.
constexpr double kDensityGrid[] = {
    29609.2, 13714.848062899439, 7937.0627054175286, 5211.4847337535856,
    3713.4876704090032, 2802.4061706684642, 2206.6159608949325, 1795.0945974116953,
    1498.3845430834008, 1276.9047636886319, 1106.7707026639198, 972.88317471935382,
    865.32118192875656, 777.35021509787826, 704.26951471888658, 642.71764907976894,
    590.23951681489982, 545.00813316201998, 505.64109320917002, 471.07663146444773,
    440.48816309040356, 413.22424518278664, 388.76567739861811, 366.69437483039597,
    346.67046406226055, 328.41521234816172, 311.69815329722689, 296.32727109058664,
    282.14144072902453, 269.00455096045, 256.80089527064111, 245.43152771893354,
    234.81135953185554, 224.86682921755943, 215.53402024043713, 206.75713056322828,
    198.48722076693119, 190.68118418652554, 183.3008950942725, 176.31250051810154,
    169.6858285869342, 163.39389191739024, 157.4124689132122, 151.71974924622723,
    146.2960324529633, 141.12347068393918, 136.18584831090384, 131.46839242766311,
    126.95760934633855, 122.64114304949019, 118.50765225309875, 114.54670329974486,
    110.74867656179231, 107.10468441161878, 103.60649912619019, 100.24648934939348,
    97.017563947737011, 93.913122271441589, 90.927009980105729, 88.053479715283296,
    85.287156005700559, 82.623003877897033, 80.056300718595429, 77.582610997371262,
    75.1977635110705, 72.897830856448867, 70.679110875944523, 68.538109854392677,
    66.471527272713865, 64.476241948878418, 62.54929941736966, 60.687900416440591,
    58.889390368105051, 57.151249749378947, 55.471085265088845, 53.846621742846307,
    52.275694679760348, 50.756243378308545, 49.286304615663824, 47.864006796810006,
    46.487564547087161};

DisplayGeometry uhd() {
  DisplayGeometry g;
  g.width_px = 3840;
  g.height_px = 2160;
  g.horizontal_fov_deg = 80.0;
  return g;
}

TEST(ConeDensity, MatchesReferenceGrid) {
  const WeightParams p;
  for (int i = 0; i <= 80; ++i) {
    const double ref = kDensityGrid[i];
    EXPECT_NEAR(cone_density(i * 0.5, p), ref, 1e-12 * ref) << "e=" << i * 0.5;
  }
}

TEST(ConeDensity, PeakAndMonotone) {
  const WeightParams p;
  EXPECT_NEAR(cone_density(0.0, p), 29609.2, 1e-9);
  EXPECT_LT(cone_density(5.0, p), cone_density(2.5, p));
  double prev = cone_density(0.0, p);
  for (double e = 0.01; e < 90; e += 0.01) {
    const double d = cone_density(e, p);
    ASSERT_GT(d, 0.0);
    ASSERT_LT(d, prev) << e;
    prev = d;
  }
  EXPECT_THROW(cone_density(-0.1, p), Error);
}

TEST(AcuityWeight, FoveaAndRatios) {
  const WeightParams p;  // r_f = 2.5
  EXPECT_EQ(acuity_weight(0.5 * p.r_f, p), 1.0);
  EXPECT_EQ(acuity_weight(p.r_f, p), 1.0);
  EXPECT_NEAR(acuity_weight(std::nextafter(p.r_f, 10.0), p), 1.0, 1e-12);
  const double w5 = acuity_weight(5.0, p);
  EXPECT_NEAR(w5, 0.39493586413275681, 1e-12);
  EXPECT_NEAR(acuity_weight(7.5, p), 0.22934493072660487, 1e-12);
  EXPECT_GT(w5, 0.0);
  EXPECT_LT(w5, 1.0);
  EXPECT_GT(w5, acuity_weight(3 * p.r_f, p));
}

TEST(AcuityWeight, NonIncreasingAndWeighterAgrees) {
  WeightParams p;
  p.r_f = 3.1;
  const AcuityWeighter weigher(p);
  double prev = 1.0;
  for (double e = 0.0; e < 60; e += 0.05) {
    const double w = acuity_weight(e, p);
    ASSERT_LE(w, prev);
    ASSERT_EQ(weigher(e), w) << e;
    prev = w;
  }
}

TEST(WeightParams, Validation) {
  WeightParams p;
  p.a_k = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = WeightParams{};
  p.r_m = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = WeightParams{};
  p.r_f = -1;
  EXPECT_THROW(AcuityWeighter{p}, Error);
}

TEST(Eccentricity, Linear) {
  const DisplayGeometry g = uhd();
  EXPECT_EQ(g.pixels_per_degree(), 48.0);
  EXPECT_EQ(eccentricity({100, 200}, {100, 200}, g), 0.0);
  EXPECT_DOUBLE_EQ(eccentricity({1920 + 480, 1080}, {1920, 1080}, g), 10.0);
  EXPECT_DOUBLE_EQ(eccentricity({1920, 1080 + 288}, {1920, 1080 - 0}, g), 6.0);
}

TEST(Eccentricity, PerspectiveAgreesNearGaze) {
  // The linear mapping is compared at the perspective mapping's central
  // density (viewer distance in px per radian); at width/fov = 48 px/deg the
  // two differ by ~20% even at small eccentricities.
  DisplayGeometry persp = uhd();
  persp.mapping = AngularMapping::kPerspective;
  DisplayGeometry lin = uhd();
  lin.horizontal_fov_deg = lin.width_px / (persp.viewer_distance_px() * M_PI / 180.0);
  const PixelPos gaze{1919.5, 1079.5};
  for (double angle = 0; angle < 6.3; angle += 0.3) {
    for (double r = 0; r <= 5.0 * 48; r += 12) {
      const PixelPos p{gaze.x + r * std::cos(angle), gaze.y + r * std::sin(angle)};
      EXPECT_NEAR(eccentricity(p, gaze, persp), eccentricity(p, gaze, lin), 0.1);
    }
  }
  EXPECT_NEAR(persp.viewer_distance_px() * M_PI / 180.0, 39.93604620142095, 1e-9);
  // Rays through the frame edge subtend half the horizontal field of view.
  EXPECT_NEAR(eccentricity({-0.5, 1079.5}, {1919.5, 1079.5}, persp), 40.0, 1e-9);
}

TEST(Eccentricity, RadialSymmetryAtCenter) {
  DisplayGeometry g;
  g.width_px = 64;
  g.height_px = 48;
  g.horizontal_fov_deg = 4.0;
  const PixelPos c{31.5, 23.5};
  const WeightParams p;
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double w = acuity_weight(eccentricity({double(x), double(y)}, c, g), p);
      ASSERT_EQ(w, acuity_weight(eccentricity({63.0 - x, double(y)}, c, g), p));
      ASSERT_EQ(w, acuity_weight(eccentricity({double(x), 47.0 - y}, c, g), p));
    }
  }
}

TEST(DisplayGeometry, Validation) {
  DisplayGeometry g;
  g.horizontal_fov_deg = 180;
  EXPECT_THROW(g.validate(), Error);
  g = DisplayGeometry{};
  g.width_px = 0;
  EXPECT_THROW(g.validate(), Error);
  EXPECT_NEAR(uhd().viewer_distance_px(), 1920 / std::tan(40.0 * M_PI / 180), 1e-9);
}

TEST(MaxEccentricity, Corners) {
  const DisplayGeometry g = uhd();
  EXPECT_DOUBLE_EQ(max_eccentricity({0, 0}, g), std::hypot(3839.0, 2159.0) / 48.0);
}

}  // namespace
}  // namespace fovwrs
