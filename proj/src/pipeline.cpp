// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace fovwrs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* to_string(Method m) noexcept { return m == Method::kFov ? "fov" : "wrs"; }

void PipelineConfig::validate() const {
  foveation.validate();
  weights.validate();
  display.validate();
  if (!(eps_rel >= 0.0) || !std::isfinite(eps_rel)) fail(ErrorKind::kInvalidInput, "eps_rel must be non-negative");
  if (threads < 0) fail(ErrorKind::kInvalidInput, "threads must be >= 0");
  if (weights.r_f != foveation.r_f) {
    fail(ErrorKind::kInvalidInput, "weight and foveation fovea radii differ");
  }
}

void reproject_into(const ReservoirGrid& grid, const MotionField& motion, const DepthPlane& depth_prev,
                    const DepthPlane& depth_cur, double eps_rel, int threads, ReprojectResult& out) {
  const std::int32_t w = grid.cells.width(), h = grid.cells.height();
  if (!motion.same_shape(grid.cells) || !depth_prev.same_shape(grid.cells) || !depth_cur.same_shape(grid.cells)) {
    fail(ErrorKind::kInvalidInput, "reproject planes have mismatched dimensions");
  }
  if (&out.grid == &grid) fail(ErrorKind::kInvalidInput, "reproject cannot run in place");
  if (!out.grid.cells.same_shape(w, h)) out.grid.cells = Plane<PixelReservoir>(w, h);
  if (!out.flushed.same_shape(w, h)) out.flushed = Plane<std::uint8_t>(w, h);
  out.grid.frame_index = grid.frame_index;
  out.flushed_count = 0;
  std::vector<std::size_t> row_flushes(static_cast<std::size_t>(h), 0);
  parallel_rows(h, threads, [&](std::int32_t y) {
    std::size_t flushes = 0;
    for (std::int32_t x = 0; x < w; ++x) {
      const MotionVec mv = motion.at(x, y);
      const double sxf = std::floor(x + static_cast<double>(mv.dx) + 0.5);
      const double syf = std::floor(y + static_cast<double>(mv.dy) + 0.5);
      PixelReservoir& dst = out.grid.cells.at(x, y);
      std::uint8_t& flag = out.flushed.at(x, y);
      dst = PixelReservoir{};
      flag = 0;
      const bool in_frame = sxf >= 0.0 && syf >= 0.0 && sxf < w && syf < h;
      if (!in_frame) {
        flag = 1;
        ++flushes;
        continue;
      }
      const auto sx = static_cast<std::int32_t>(sxf), sy = static_cast<std::int32_t>(syf);
      const PixelReservoir& src = grid.cells.at(sx, sy);
      const double dcur = depth_cur.at(x, y);
      if (std::abs(dcur - static_cast<double>(depth_prev.at(sx, sy))) <= eps_rel * dcur) {
        dst = src;
      } else if (!src.empty()) {
        flag = 1;
        ++flushes;
      }
    }
    row_flushes[static_cast<std::size_t>(y)] = flushes;
  });
  for (std::size_t n : row_flushes) out.flushed_count += n;
}

ReprojectResult reproject(const ReservoirGrid& grid, const MotionField& motion,
                          const DepthPlane& depth_prev, const DepthPlane& depth_cur, double eps_rel,
                          int threads) {
  ReprojectResult out;
  reproject_into(grid, motion, depth_prev, depth_cur, eps_rel, threads, out);
  return out;
}

TemporalPipeline::TemporalPipeline(PipelineConfig cfg)
    : cfg_((cfg.validate(), cfg)), weighter_(cfg_.weights), rng_(cfg_.seed) {
  reset();
}

void TemporalPipeline::reset() {
  grid_ = ReservoirGrid{Plane<PixelReservoir>(cfg_.display.width_px, cfg_.display.height_px), -1};
  prev_depth_ = DepthPlane();
  prev_output_ = Image();
  next_frame_ = 0;
}

void TemporalPipeline::set_foveation(const FoveationConfig& f) {
  f.validate();
  cfg_.foveation = f;
  cfg_.weights.r_f = f.r_f;
  weighter_ = AcuityWeighter(cfg_.weights);
}

StepResult TemporalPipeline::step(const FrameBundle& bundle, PixelPos gaze) {
  bundle.validate();
  const std::int32_t w = cfg_.display.width_px, h = cfg_.display.height_px;
  if (!bundle.color.same_shape(w, h)) {
    fail(ErrorKind::kInvalidInput, "frame " + std::to_string(bundle.color.width()) + "x" +
                                       std::to_string(bundle.color.height()) +
                                       " does not match pipeline state");
  }
  StepResult result;
  auto t0 = Clock::now();
  result.foveated = foveate(bundle.color, gaze, cfg_.foveation, cfg_.display, cfg_.threads);
  result.timings.foveate_ms = ms_since(t0);

  t0 = Clock::now();
  const bool has_history = next_frame_ > 0 && !prev_depth_.empty();
  if (has_history) {
    reproject_into(grid_, bundle.motion, prev_depth_, bundle.depth, cfg_.eps_rel, cfg_.threads, scratch_);
    std::swap(grid_, scratch_.grid);
    result.flushed = scratch_.flushed;
    result.flushed_count = scratch_.flushed_count;
  } else {
    result.flushed = Plane<std::uint8_t>(w, h, 0);
  }
  result.timings.reproject_ms = ms_since(t0);

  t0 = Clock::now();
  result.output = Image(w, h);
  const std::uint64_t frame = static_cast<std::uint64_t>(next_frame_);
  std::vector<std::size_t> row_resets(static_cast<std::size_t>(h), 0);
  parallel_rows(h, cfg_.threads, [&](std::int32_t y) {
    std::size_t resets = 0;
    for (std::int32_t x = 0; x < w; ++x) {
      const double e = eccentricity({double(x), double(y)}, gaze, cfg_.display);
      const double w_i = weighter_(e);
      const Rgb c = result.foveated.at(x, y);
      const PixelReservoir candidate{PixelSample{c, lightness_(c)}, w_i, w_i, 1};
      PixelReservoir history = grid_.cells.at(x, y);
      if (cfg_.foveal_guard && w_i == 1.0 && !history.empty() && history.w < 1.0) {
        history = PixelReservoir{};
        ++resets;
      }
      if (!history.empty() && cfg_.temporal_bias) {
        double dl;
        if (cfg_.distance == HistoryDistance::kLightness) {
          dl = std::min(1.0, std::abs(double(history.sample.lightness) - double(candidate.sample.lightness)) / 100.0);
        } else {
          dl = delta_e94(history.sample.color, c);
        }
        history = full_bias(history, candidate.w_sum, dl);
      }
      const std::size_t pixel = grid_.cells.index(x, y);
      const PixelReservoir chosen = combine(history, candidate, rng_.draw(frame, pixel));
      grid_.cells.at(x, y) = chosen;
      result.output.at(x, y) = chosen.sample.color;
    }
    row_resets[static_cast<std::size_t>(y)] = resets;
  });
  for (std::size_t n : row_resets) result.guard_resets += n;
  grid_.frame_index = next_frame_;
  result.timings.bias_combine_ms = ms_since(t0);

  prev_depth_ = bundle.depth;
  prev_output_ = result.output;
  ++next_frame_;
  return result;
}

MethodRunner::MethodRunner(Method method, const PipelineConfig& cfg) : method_(method), cfg_(cfg) {
  cfg_.validate();
  if (method == Method::kWrs) pipeline_.emplace(cfg_);
}

StepResult MethodRunner::step(const FrameBundle& bundle, PixelPos gaze) {
  if (pipeline_) return pipeline_->step(bundle, gaze);
  StepResult result;
  const auto t0 = Clock::now();
  result.foveated = foveate(bundle.color, gaze, cfg_.foveation, cfg_.display, cfg_.threads);
  result.timings.foveate_ms = ms_since(t0);
  result.output = result.foveated;
  return result;
}

void run(const FrameProvider& frames, std::int64_t frame_count, const Scanpath& scanpath, Method method,
         const PipelineConfig& cfg, const FrameObserver& observer) {
  MethodRunner runner(method, cfg);
  for (std::int64_t i = 0; i < frame_count; ++i) {
    const FrameBundle bundle = frames(i);
    const PixelPos gaze = scanpath.gaze_at(i);
    const StepResult result = runner.step(bundle, gaze);
    if (observer) observer(FrameRecord{i, method, gaze, &bundle, &result, runner.pipeline()});
  }
}

std::vector<Image> run_sequence(const std::vector<FrameBundle>& frames, const Scanpath& scanpath,
                                Method method, const PipelineConfig& cfg) {
  std::vector<Image> out;
  out.reserve(frames.size());
  run([&](std::int64_t i) { return frames[static_cast<std::size_t>(i)]; },
      static_cast<std::int64_t>(frames.size()), scanpath, method, cfg,
      [&](const FrameRecord& r) { out.push_back(r.result->output); });
  return out;
}

}  // namespace fovwrs
