// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "errors.hpp"

namespace fovwrs {
namespace {

namespace fs = std::filesystem;

void expect_config_error(const std::string& text, const std::string& field) {
  try {
    parse_run_config_text(text);
    FAIL() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(std::string(e.what()).find("'" + field + "'"), std::string::npos) << e.what();
  }
}

TEST(Config, Defaults) {
  const RunConfig c = parse_run_config_text("{}");
  EXPECT_EQ(c.pipeline.display.width_px, 1280);
  EXPECT_EQ(c.pipeline.display.height_px, 720);
  EXPECT_DOUBLE_EQ(c.pipeline.display.pixels_per_degree(), 48.0);
  EXPECT_DOUBLE_EQ(c.pipeline.foveation.r_f, 2.5);
  EXPECT_DOUBLE_EQ(c.pipeline.weights.r_f, 2.5);
  EXPECT_EQ(c.methods.size(), 2u);
  EXPECT_TRUE(c.scene.has_value());
  EXPECT_FALSE(c.frames.has_value());
}

TEST(Config, ParsesFields) {
  const RunConfig c = parse_run_config_text(R"({
    "scene": {"id": "perlin_texture", "scale": 24, "velocity": 2, "seed": 9},
    "methods": ["wrs"],
    "foveation": {"fovea_deg": 8, "method": "gaussian"},
    "display": {"width": 320, "height": 200, "horizontal_fov_deg": 10, "mapping": "perspective"},
    "seed": 77, "eps_rel": 0.05, "history_distance": "delta_e94", "temporal_bias": false,
    "frames": 12, "png16": true, "threads": 2
  })");
  EXPECT_EQ(c.scene->id, SceneId::kPerlinTexture);
  EXPECT_EQ(c.scene->seed, 9u);
  EXPECT_EQ(c.methods, std::vector<Method>{Method::kWrs});
  EXPECT_DOUBLE_EQ(c.pipeline.foveation.r_f, 4.0);
  EXPECT_EQ(c.pipeline.foveation.method, FoveationMethod::kGaussian);
  EXPECT_DOUBLE_EQ(c.pipeline.display.pixels_per_degree(), 32.0);
  EXPECT_EQ(c.pipeline.display.mapping, AngularMapping::kPerspective);
  EXPECT_EQ(c.seed(), 77u);
  EXPECT_EQ(c.pipeline.distance, HistoryDistance::kDeltaE94);
  EXPECT_FALSE(c.pipeline.temporal_bias);
  EXPECT_EQ(*c.frames, 12);
  EXPECT_TRUE(c.png16);
}

TEST(Config, ErrorsNameTheField) {
  expect_config_error(R"({"bogus": 1})", "bogus");
  expect_config_error(R"({"scene": {"id": "checker", "colour": 1}})", "scene.colour");
  expect_config_error(R"({"scene": {"id": "sponza"}})", "scene.id");
  expect_config_error(R"({"seed": -1})", "seed");
  expect_config_error(R"({"eps_rel": "x"})", "eps_rel");
  expect_config_error(R"({"methods": []})", "methods");
  expect_config_error(R"({"methods": ["fast"]})", "methods");
  expect_config_error(R"({"foveation": {"fovea_deg": 0}})", "foveation.fovea_deg");
  expect_config_error(R"({"display": {"mapping": "fisheye"}})", "display.mapping");
  expect_config_error(R"({"display": {"horizontal_fov_deg": 30, "pixels_per_degree": 40}})",
                      "display.pixels_per_degree");
  expect_config_error(R"({"frames": 0})", "frames");
  expect_config_error(R"({"history_distance": "l2"})", "history_distance");
  expect_config_error(R"({"scene": {"id": "checker"}, "input": "x"})", "input");
  try {
    parse_run_config_text("{not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(Config, RoundTripsThroughJson) {
  const RunConfig c = parse_run_config_text(R"({"scene": {"id": "text_panel"}, "seed": 5, "frames": 3,
      "display": {"width": 200, "height": 100}, "scanpath": {"synth": {"fixations": 3}}})");
  const nlohmann::json j = c.to_json();
  EXPECT_EQ(parse_run_config(j).to_json(), j);
}

TEST(Config, MissingPathsAreConfigErrors) {
  const RunConfig c = parse_run_config_text(R"({"scanpath": {"path": "/nonexistent/gaze.csv"}})");
  try {
    check_paths(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/gaze.csv"), std::string::npos);
  }
  EXPECT_THROW(load_run_config("/nonexistent/config.json"), Error);
}

TEST(Config, LoadsManifests) {
  const fs::path p = fs::temp_directory_path() / "fovwrs_manifest.json";
  const RunConfig c = parse_run_config_text(R"({"seed": 31, "frames": 4})");
  {
    std::ofstream out(p);
    out << nlohmann::json{{"tool", "fovwrs"}, {"config", c.to_json()}}.dump();
  }
  EXPECT_EQ(load_run_config(p).to_json(), c.to_json());
  fs::remove(p);
}

}  // namespace
}  // namespace fovwrs
