// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frame_source.hpp"
#include "pipeline.hpp"
#include "scanpath.hpp"

namespace fovwrs {

struct BenchSettings {
  std::int32_t warmup = 10;
  std::int32_t frames = 100;
};

/// Fully resolved run configuration. Every CLI flag maps onto one key here.
struct RunConfig {
  std::optional<SceneSpec> scene;              // procedural source
  std::optional<std::filesystem::path> input;  // or a directory of numbered PNGs
  std::optional<std::filesystem::path> scanpath_path;
  ScanpathSynthParams scanpath_synth;          // used when scanpath_path is unset
  std::vector<Method> methods = {Method::kFov, Method::kWrs};
  PipelineConfig pipeline;
  std::filesystem::path out = "fovwrs_out";
  std::optional<std::int64_t> frames;  // defaults: 150 procedural, sequence length for input
  bool write_frames = true;
  bool png16 = false;
  std::filesystem::path assets = "viewer/dist";
  double tick_hz = 30.0;
  BenchSettings bench;

  std::uint64_t seed() const noexcept { return pipeline.seed; }
  nlohmann::json to_json() const;
};

/// Parses a config document. Unknown keys and invalid values raise kConfig
/// with the dotted field name in the message. Missing keys take defaults.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig parse_run_config_text(const std::string& text);

/// Reads a config file; a run manifest (object with a "config" member) is accepted too.
RunConfig load_run_config(const std::filesystem::path& path);

/// Checks that referenced paths exist. Throws kConfig naming the path.
void check_paths(const RunConfig& cfg);

/// Default display: 1280x720 at the 48 px/deg density of a 3840 px, 80 degree display.
DisplayGeometry default_display();

}  // namespace fovwrs
