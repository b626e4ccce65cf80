// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "report.hpp"

namespace fovwrs {

struct SimulateResult {
  RunReport report;
  std::map<std::string, std::vector<std::uint64_t>> frame_hashes;  // keyed by method name
  nlohmann::json manifest;
};

/// Frame source resolved from a config: procedural scenes are rendered on
/// demand (once, when static), input directories are loaded up front.
class FrameSourceHandle {
 public:
  explicit FrameSourceHandle(const RunConfig& cfg);

  FrameBundle frame(std::int64_t index) const;
  std::int64_t available() const noexcept { return available_; }  // -1 = unbounded

  /// Display geometry adjusted to the input resolution (density preserved).
  const DisplayGeometry& display() const noexcept { return display_; }

 private:
  std::optional<SceneSpec> scene_;
  DisplayGeometry display_;
  std::vector<FrameBundle> loaded_;
  std::optional<FrameBundle> static_frame_;
  std::int64_t available_ = -1;
};

/// Resolves sources, frame count, and scanpath; the returned config is what
/// the manifest records.
RunConfig resolve(const RunConfig& cfg, const FrameSourceHandle& source);

/// Runs every configured method in lockstep over the same frames and gaze.
/// Writes <out>/<method>/NNNN.png, metrics.csv, summary.json and manifest.json.
SimulateResult simulate(const RunConfig& cfg);

/// Per-stage timing of the wrs method over bench.frames frames after
/// bench.warmup warmup frames. Nothing is written to disk.
nlohmann::json bench(const RunConfig& cfg);

/// Builds the scanpath a config refers to (file or synthetic).
Scanpath resolve_scanpath(const RunConfig& cfg);

}  // namespace fovwrs
