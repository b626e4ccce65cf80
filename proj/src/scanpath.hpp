// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weights.hpp"

namespace fovwrs {

struct GazeSample {
  std::int64_t frame = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GazeSample&, const GazeSample&) = default;
};

/// Sparse time-ordered gaze records; frames without a record hold the last gaze.
class Scanpath {
 public:
  Scanpath() = default;
  /// Throws kInvalidInput unless frames start at 0 and strictly increase.
  explicit Scanpath(std::vector<GazeSample> records);

  const std::vector<GazeSample>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  /// Last recorded frame index.
  std::int64_t last_frame() const noexcept { return records_.empty() ? -1 : records_.back().frame; }

  PixelPos gaze_at(std::int64_t frame) const;

  friend bool operator==(const Scanpath&, const Scanpath&) = default;

 private:
  std::vector<GazeSample> records_;
};

struct FrameBounds {
  std::int32_t width = 0;
  std::int32_t height = 0;
};

/// Parses `frame_index,gx_px,gy_px` lines with an optional header. Errors are
/// kParse and name the 1-based line number.
Scanpath parse_scanpath_text(const std::string& text, std::optional<FrameBounds> bounds = {});
Scanpath parse_scanpath(const std::filesystem::path& path, std::optional<FrameBounds> bounds = {});

/// Header plus one record per line; numbers use shortest round-trip form.
std::string format_scanpath(const Scanpath& path);
void write_scanpath(const std::filesystem::path& path, const Scanpath& scanpath);

struct ScanpathSynthParams {
  // 150 frames: about three saccades per second at 30 Hz, mean microsaccade ~1 deg.
  std::int32_t fixations = 15;
  std::int32_t fixation_frames = 10;
  double saccade_deg = 10.0;
  double microsaccade_sigma_deg = 0.8;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Fixation centers: the first at frame center, each next one saccade_deg away
/// in a seeded direction, reflected back into the frame.
std::vector<PixelPos> synth_fixation_centers(const ScanpathSynthParams& p, const DisplayGeometry& geom);

/// One record per frame: fixation center plus Gaussian jitter of
/// microsaccade_sigma_deg per axis, clamped to the frame.
Scanpath synth_scanpath(const ScanpathSynthParams& p, const DisplayGeometry& geom);

}  // namespace fovwrs
