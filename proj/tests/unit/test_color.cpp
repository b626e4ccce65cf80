// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "color.hpp"

namespace fovwrs {
namespace {

TEST(Lab, ReferencePoints) {
  EXPECT_NEAR(srgb_to_lab({1, 1, 1}).l, 100.0, 1e-3);
  EXPECT_NEAR(srgb_to_lab({1, 1, 1}).a, 0.0, 0.01);
  EXPECT_NEAR(srgb_to_lab({0, 0, 0}).l, 0.0, 1e-12);
  EXPECT_NEAR(srgb_to_lab({0.5, 0.5, 0.5}).l, 53.38896474111432, 1e-9);
  EXPECT_NEAR(srgb_to_lab({1, 0, 0}).l, 53.23288178584245, 1e-9);
  EXPECT_NEAR(srgb_to_lab({0, 1, 0}).l, 87.73703347354422, 1e-9);
}

TEST(DeltaL, Values) {
  EXPECT_EQ(delta_l({0.3, 0.6, 0.1}, {0.3, 0.6, 0.1}), 0.0);
  EXPECT_NEAR(delta_l({1, 0, 0}, {0, 1, 0}), 0.3450415168770176, 1e-12);
  EXPECT_NEAR(delta_l({0, 0, 0}, {1, 1, 1}), 1.0, 1e-4);
  EXPECT_LE(delta_l({0, 0, 0}, {1, 1, 1}), 1.0);
  EXPECT_EQ(delta_l({0.2, 0.7, 0.9}, {0.8, 0.1, 0.3}), delta_l({0.8, 0.1, 0.3}, {0.2, 0.7, 0.9}));
}

TEST(DeltaE94, MatchesScikitImage) {
  // skimage.color.deltaE_ciede94(k1=0.045, k2=0.015) / 100 on the same Lab conversion;
  // skimage agrees to ~1e-8 only.
  EXPECT_NEAR(delta_e94({0.2, 0.4, 0.6}, {0.25, 0.35, 0.7}), 0.13624837643496104, 1e-6);
  EXPECT_NEAR(delta_e94({1, 0, 0}, {0, 1, 0}), 0.734337610883601, 1e-6);
  EXPECT_NEAR(delta_e94({0.5, 0.5, 0.5}, {0.6, 0.5, 0.4}), 0.18569607002621796, 1e-6);
  EXPECT_EQ(delta_e94({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}), 0.0);
}

TEST(LightnessLut, CloseToExact) {
  const LightnessLut lut;
  double worst = 0.0;
  for (int r = 0; r <= 32; ++r)
    for (int g = 0; g <= 32; ++g)
      for (int b = 0; b <= 32; ++b) {
        const Rgb c{r / 32.0f, g / 32.0f, b / 32.0f};
        worst = std::max(worst, std::abs(lut(c) - srgb_to_lab(c).l));
      }
  EXPECT_LT(worst, 0.05);  // L* units; 0.0005 after normalization by 100
  EXPECT_EQ(lut({0, 0, 0}), 0.0f);
}

TEST(SrgbToLinear, Clamps) {
  EXPECT_EQ(srgb_to_linear(-1.0), 0.0);
  EXPECT_EQ(srgb_to_linear(2.0), 1.0);
  EXPECT_NEAR(srgb_to_linear(0.04045), 0.04045 / 12.92, 1e-15);
}

}  // namespace
}  // namespace fovwrs
