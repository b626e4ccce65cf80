// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "png_io.hpp"

namespace fovwrs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

constexpr std::int64_t kDefaultProceduralFrames = 150;

std::string frame_name(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld.png", static_cast<long long>(index));
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Re-labels component errors with the frame they happened on.
template <typename F>
auto at_frame(std::int64_t index, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    fail(e.kind(), "frame " + std::to_string(index) + ": " + e.what());
  }
}

nlohmann::json stage_stats(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return {{"mean_ms", v.empty() ? 0.0 : sum / static_cast<double>(v.size())},
          {"median_ms", percentile(v, 50.0)},
          {"p99_ms", percentile(v, 99.0)}};
}

}  // namespace

FrameSourceHandle::FrameSourceHandle(const RunConfig& cfg) : scene_(cfg.scene), display_(cfg.pipeline.display) {
  check_paths(cfg);
  if (cfg.input) {
    loaded_ = load_sequence(*cfg.input);
    const double ppd = display_.pixels_per_degree();
    display_.width_px = loaded_.front().color.width();
    display_.height_px = loaded_.front().color.height();
    display_.horizontal_fov_deg = display_.width_px / ppd;
    available_ = static_cast<std::int64_t>(loaded_.size());
    return;
  }
  if (!scene_) fail(ErrorKind::kConfig, "config field 'scene': a scene or an input directory is required");
  const bool animated = scene_->velocity != 0.0 || scene_->id == SceneId::kLayeredOccluders;
  if (!animated) static_frame_ = render_procedural(*scene_, 0, display_);
}

FrameBundle FrameSourceHandle::frame(std::int64_t index) const {
  if (!loaded_.empty()) {
    if (index < 0 || index >= available_) fail(ErrorKind::kInvalidInput, "frame index out of range");
    return loaded_[static_cast<std::size_t>(index)];
  }
  if (static_frame_) return *static_frame_;
  return render_procedural(*scene_, index, display_);
}

RunConfig resolve(const RunConfig& cfg, const FrameSourceHandle& source) {
  RunConfig r = cfg;
  r.pipeline.display = source.display();
  if (!r.frames) r.frames = source.available() >= 0 ? source.available() : kDefaultProceduralFrames;
  if (source.available() >= 0 && *r.frames > source.available()) {
    fail(ErrorKind::kConfig, "config field 'frames': " + std::to_string(*r.frames) + " requested but input has " +
                                 std::to_string(source.available()));
  }
  r.pipeline.validate();
  return r;
}

Scanpath resolve_scanpath(const RunConfig& cfg) {
  const auto& d = cfg.pipeline.display;
  if (cfg.scanpath_path) {
    if (!std::filesystem::is_regular_file(*cfg.scanpath_path)) {
      fail(ErrorKind::kConfig, "config field 'scanpath.path': file does not exist: " + cfg.scanpath_path->string());
    }
    return parse_scanpath(*cfg.scanpath_path, FrameBounds{d.width_px, d.height_px});
  }
  return synth_scanpath(cfg.scanpath_synth, d);
}

SimulateResult simulate(const RunConfig& input_cfg) {
  const FrameSourceHandle source(input_cfg);
  const RunConfig cfg = resolve(input_cfg, source);
  const Scanpath scanpath = resolve_scanpath(cfg);
  const std::int64_t frame_count = *cfg.frames;

  std::vector<MethodRunner> runners;
  std::vector<MethodRun> runs;
  for (Method m : cfg.methods) {
    runners.emplace_back(m, cfg.pipeline);
    runs.push_back(MethodRun{m, {}});
  }
  std::map<std::string, std::vector<std::uint64_t>> hashes;

  std::filesystem::create_directories(cfg.out);
  if (cfg.write_frames) {
    for (Method m : cfg.methods) std::filesystem::create_directories(cfg.out / to_string(m));
  }

  for (std::int64_t i = 0; i < frame_count; ++i) {
    at_frame(i, [&] {
      const FrameBundle bundle = source.frame(i);
      const PixelPos gaze = scanpath.gaze_at(i);
      for (std::size_t k = 0; k < runners.size(); ++k) {
        const StepResult result = runners[k].step(bundle, gaze);
        FrameMetrics fm;
        fm.frame = i;
        fm.timings = result.timings;
        const auto t0 = Clock::now();
        fm.psnr_db = psnr(result.output, bundle.color);
        fm.ssim = ssim(result.output, bundle.color, cfg.pipeline.threads);
        fm.metrics_ms = ms_since(t0);
        runs[k].frames.push_back(fm);
        const char* name = to_string(runners[k].method());
        hashes[name].push_back(frame_hash(result.output));
        if (cfg.write_frames) write_png(cfg.out / name / frame_name(i), result.output, cfg.png16 ? 16 : 8);
      }
      return 0;
    });
  }

  RunReport report(std::move(runs));
  report.write(cfg.out);

  nlohmann::json frames_json = nlohmann::json::object();
  for (const auto& [name, list] : hashes) {
    auto& arr = frames_json[name] = nlohmann::json::array();
    for (std::uint64_t h : list) arr.push_back(hex64(h));
  }
  nlohmann::json manifest = {{"tool", "fovwrs"},
                             {"schema", "fovwrs.manifest.v1"},
                             {"seed", cfg.seed()},
                             {"config", cfg.to_json()},
                             {"frame_hashes", frames_json}};
  std::ofstream(cfg.out / "manifest.json") << manifest.dump(2) << '\n';
  if (!std::filesystem::exists(cfg.out / "manifest.json")) fail(ErrorKind::kIo, "cannot write manifest.json");
  return SimulateResult{std::move(report), std::move(hashes), std::move(manifest)};
}

nlohmann::json bench(const RunConfig& input_cfg) {
  const FrameSourceHandle source(input_cfg);
  RunConfig cfg = input_cfg;
  cfg.frames.reset();
  cfg = resolve(cfg, source);
  const Scanpath scanpath = resolve_scanpath(cfg);
  const std::int64_t total = cfg.bench.warmup + cfg.bench.frames;
  if (source.available() >= 0 && total > source.available()) {
    fail(ErrorKind::kConfig, "config field 'bench.frames': input has only " + std::to_string(source.available()) +
                                 " frames, bench needs " + std::to_string(total));
  }

  MethodRunner runner(Method::kWrs, cfg.pipeline);
  std::vector<double> foveate, reproject, bias_combine, metrics, frame_total;
  for (std::int64_t i = 0; i < total; ++i) {
    at_frame(i, [&] {
      const FrameBundle bundle = source.frame(i);
      const auto t0 = Clock::now();
      const StepResult result = runner.step(bundle, scanpath.gaze_at(i));
      const auto t1 = Clock::now();
      const double p = psnr(result.output, bundle.color);
      const double s = ssim(result.output, bundle.color, cfg.pipeline.threads);
      const double metrics_ms = ms_since(t1);
      const double frame_ms = ms_since(t0);
      (void)p;
      (void)s;
      if (i >= cfg.bench.warmup) {
        foveate.push_back(result.timings.foveate_ms);
        reproject.push_back(result.timings.reproject_ms);
        bias_combine.push_back(result.timings.bias_combine_ms);
        metrics.push_back(metrics_ms);
        frame_total.push_back(frame_ms);
      }
      return 0;
    });
  }

  nlohmann::json stages = nlohmann::json::array();
  stages.push_back({{"stage", "foveate"}, {"stats", stage_stats(foveate)}});
  stages.push_back({{"stage", "reproject"}, {"stats", stage_stats(reproject)}});
  stages.push_back({{"stage", "bias_combine"}, {"stats", stage_stats(bias_combine)}});
  stages.push_back({{"stage", "metrics"}, {"stats", stage_stats(metrics)}});
  double stage_sum = 0.0;
  for (const auto& s : stages) stage_sum += s["stats"]["mean_ms"].get<double>();
  const nlohmann::json total_stats = stage_stats(frame_total);
  const double total_mean = total_stats["mean_ms"].get<double>();
  const double wrs_mean = stages[1]["stats"]["mean_ms"].get<double>() + stages[2]["stats"]["mean_ms"].get<double>() +
                          stages[0]["stats"]["mean_ms"].get<double>();
  return {{"schema", "fovwrs.bench.v1"},
          {"width", cfg.pipeline.display.width_px},
          {"height", cfg.pipeline.display.height_px},
          {"threads", resolve_threads(cfg.pipeline.threads)},
          {"warmup", cfg.bench.warmup},
          {"frames", cfg.bench.frames},
          {"stages", stages},
          {"frame_total", total_stats},
          {"wrs_step_mean_ms", wrs_mean},
          {"stage_sum_mean_ms", stage_sum},
          {"accounting_ratio", total_mean > 0.0 ? stage_sum / total_mean : 1.0}};
}

}  // namespace fovwrs
