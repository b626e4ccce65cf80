// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "image.hpp"
#include "weights.hpp"

namespace fovwrs {

/// Ground-truth frame: color, depth in scene units, and motion vectors that
/// map each pixel to its position in the previous frame.
struct FrameBundle {
  Image color;
  DepthPlane depth;
  MotionField motion;

  /// Throws kInvalidInput unless all planes share the color plane's shape.
  void validate() const;
};

enum class SceneId { kChecker, kTextPanel, kPerlinTexture, kLayeredOccluders };

std::string to_string(SceneId id);
/// Throws kConfig for unknown names.
SceneId scene_from_string(const std::string& name);

struct OccluderParams {
  std::int32_t count = 5;
  std::int32_t width_px = 48;
  double velocity = 6.0;      // screen-space px/frame, added to the camera velocity
  double depth = 2.0;
  double background_depth = 10.0;
};

struct SceneSpec {
  SceneId id = SceneId::kChecker;
  double scale = 16.0;     // feature size in pixels
  double velocity = 0.0;   // lateral camera velocity, px/frame
  std::uint64_t seed = 1;  // texture seed (perlin, text)
  OccluderParams occluders;

  void validate() const;
};

/// Deterministic frame `frame_index` of a procedural scene. Camera motion is a
/// lateral translation: color(x, y, t) = color(x - velocity, y, t - 1), and
/// background motion vectors are exactly (-velocity, 0) for t > 0.
FrameBundle render_procedural(const SceneSpec& spec, std::int64_t frame_index,
                              const DisplayGeometry& geom);

/// Loads `NNN.png` frames (contiguous numbering) with optional `NNN.fdep` and
/// `NNN.fmot` sidecars. Missing sidecars give zero motion and unit depth.
std::vector<FrameBundle> load_sequence(const std::filesystem::path& dir);

/// Sidecar codecs: 16-byte header (4-byte magic, u32 width, u32 height,
/// u32 reserved) followed by little-endian float32 planes.
void write_depth_sidecar(const std::filesystem::path& path, const DepthPlane& depth);
DepthPlane read_depth_sidecar(const std::filesystem::path& path);
void write_motion_sidecar(const std::filesystem::path& path, const MotionField& motion);
MotionField read_motion_sidecar(const std::filesystem::path& path);

}  // namespace fovwrs
