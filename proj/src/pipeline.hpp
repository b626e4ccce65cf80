// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "color.hpp"
#include "foveation.hpp"
#include "frame_source.hpp"
#include "image.hpp"
#include "reservoir.hpp"
#include "rng.hpp"
#include "scanpath.hpp"
#include "weights.hpp"

namespace fovwrs {

/// Reservoir payload: the displayed color plus its cached CIELAB lightness.
struct PixelSample {
  Rgb color;
  float lightness = 0.0f;

  friend bool operator==(const PixelSample&, const PixelSample&) = default;
};
using PixelReservoir = Reservoir<PixelSample>;

struct ReservoirGrid {
  Plane<PixelReservoir> cells;
  std::int64_t frame_index = -1;  // last frame that updated the grid
};

enum class HistoryDistance { kLightness, kDeltaE94 };
enum class Method { kFov, kWrs };

const char* to_string(Method m) noexcept;

struct PipelineConfig {
  FoveationConfig foveation;
  WeightParams weights;
  DisplayGeometry display;
  std::uint64_t seed = 1;
  double eps_rel = 0.02;
  HistoryDistance distance = HistoryDistance::kLightness;
  /// Inside the fovea, history whose own sample weight is below 1 is discarded
  /// before combining, so a peripheral sample never replaces a foveal one.
  bool foveal_guard = true;
  /// When false the survival and lightness factors are skipped (plain accumulation).
  bool temporal_bias = true;
  int threads = 1;

  void validate() const;
};

struct ReprojectResult {
  ReservoirGrid grid;
  Plane<std::uint8_t> flushed;  // 1 where history was discarded
  std::size_t flushed_count = 0;
};

/// Nearest-neighbor reservoir fetch from pixel + motion. Fetches outside the
/// frame or with |depth_cur - depth_prev(src)| > eps_rel * depth_cur are
/// flushed to the empty reservoir. Out-of-frame fetches are always flagged;
/// depth rejections are flagged only when the source cell held history.
ReprojectResult reproject(const ReservoirGrid& grid, const MotionField& motion,
                          const DepthPlane& depth_prev, const DepthPlane& depth_cur, double eps_rel,
                          int threads = 1);
/// As reproject, reusing the buffers in `out` (must not alias `grid`).
void reproject_into(const ReservoirGrid& grid, const MotionField& motion, const DepthPlane& depth_prev,
                    const DepthPlane& depth_cur, double eps_rel, int threads, ReprojectResult& out);

struct StageTimings {
  double foveate_ms = 0.0;
  double reproject_ms = 0.0;
  double bias_combine_ms = 0.0;

  double total_ms() const noexcept { return foveate_ms + reproject_ms + bias_combine_ms; }
};

struct StepResult {
  Image output;
  Image foveated;
  Plane<std::uint8_t> flushed;
  std::size_t flushed_count = 0;
  std::size_t guard_resets = 0;
  StageTimings timings;
};

/// Per-pixel temporal reservoir state carried across frames.
class TemporalPipeline {
 public:
  explicit TemporalPipeline(PipelineConfig cfg);

  /// Foveates the bundle, reprojects history, biases and combines per pixel.
  StepResult step(const FrameBundle& bundle, PixelPos gaze);

  const PipelineConfig& config() const noexcept { return cfg_; }
  const ReservoirGrid& grid() const noexcept { return grid_; }
  const DepthPlane& prev_depth() const noexcept { return prev_depth_; }
  const Image& prev_output() const noexcept { return prev_output_; }
  std::int64_t frames_processed() const noexcept { return next_frame_; }

  /// Drops all history; the next step behaves like frame 0.
  void reset();
  /// Replaces the foveation config; history is kept.
  void set_foveation(const FoveationConfig& f);

 private:
  PipelineConfig cfg_;
  AcuityWeighter weighter_;
  LightnessLut lightness_;
  CounterRng rng_;
  ReservoirGrid grid_;
  ReprojectResult scratch_;
  DepthPlane prev_depth_;
  Image prev_output_;
  std::int64_t next_frame_ = 0;
};

/// One method's per-frame state: fov foveates only, wrs owns a TemporalPipeline.
class MethodRunner {
 public:
  MethodRunner(Method method, const PipelineConfig& cfg);

  StepResult step(const FrameBundle& bundle, PixelPos gaze);

  Method method() const noexcept { return method_; }
  /// Null for the fov method.
  const TemporalPipeline* pipeline() const noexcept { return pipeline_ ? &*pipeline_ : nullptr; }

 private:
  Method method_;
  PipelineConfig cfg_;
  std::optional<TemporalPipeline> pipeline_;
};

struct FrameRecord {
  std::int64_t index = 0;
  Method method = Method::kFov;
  PixelPos gaze;
  const FrameBundle* ground_truth = nullptr;
  const StepResult* result = nullptr;
  const TemporalPipeline* pipeline = nullptr;  // null for the fov method
};

using FrameProvider = std::function<FrameBundle(std::int64_t)>;
using FrameObserver = std::function<void(const FrameRecord&)>;

/// Replays `frame_count` frames. The fov method bypasses reservoirs; wrs runs
/// TemporalPipeline::step per frame. Gaze follows the scanpath hold rule.
void run(const FrameProvider& frames, std::int64_t frame_count, const Scanpath& scanpath, Method method,
         const PipelineConfig& cfg, const FrameObserver& observer);

/// Convenience wrapper collecting the output images.
std::vector<Image> run_sequence(const std::vector<FrameBundle>& frames, const Scanpath& scanpath,
                                Method method, const PipelineConfig& cfg);

}  // namespace fovwrs
