// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "errors.hpp"

namespace fovwrs {

RunReport::RunReport(std::vector<MethodRun> runs) : runs_(std::move(runs)) {
  for (const auto& run : runs_) {
    const auto& ref = runs_.front().frames;
    if (run.frames.size() != ref.size()) fail(ErrorKind::kInvalidInput, "method runs have different frame counts");
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (run.frames[i].frame != ref[i].frame) fail(ErrorKind::kInvalidInput, "method runs are misaligned");
    }
  }
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

nlohmann::json stats(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  if (!values.empty()) mean /= static_cast<double>(values.size());
  return {{"mean", mean}, {"p50", percentile(values, 50)}, {"p90", percentile(values, 90)},
          {"p99", percentile(values, 99)}};
}

}  // namespace

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(values.size()))) - 1;
  return values[idx];
}

double finite_mean(const std::vector<double>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::string RunReport::csv() const {
  std::string out =
      "frame,method,psnr_db,ssim,lpips,fovvideovdp,foveate_ms,reproject_ms,bias_combine_ms,metrics_ms,total_ms\n";
  for (const auto& run : runs_) {
    for (const auto& f : run.frames) {
      out += std::to_string(f.frame) + "," + to_string(run.method) + "," + number(f.psnr_db) + "," +
             number(f.ssim) + ",,," + number(f.timings.foveate_ms) + "," + number(f.timings.reproject_ms) +
             "," + number(f.timings.bias_combine_ms) + "," + number(f.metrics_ms) + "," +
             number(f.timings.total_ms() + f.metrics_ms) + "\n";
    }
  }
  return out;
}

nlohmann::json RunReport::summary() const {
  nlohmann::json methods = nlohmann::json::object();
  for (const auto& run : runs_) {
    std::vector<double> psnrs, ssims, fov, rep, bc, met, total;
    for (const auto& f : run.frames) {
      psnrs.push_back(f.psnr_db);
      ssims.push_back(f.ssim);
      fov.push_back(f.timings.foveate_ms);
      rep.push_back(f.timings.reproject_ms);
      bc.push_back(f.timings.bias_combine_ms);
      met.push_back(f.metrics_ms);
      total.push_back(f.timings.total_ms() + f.metrics_ms);
    }
    const auto infinite = std::count_if(psnrs.begin(), psnrs.end(), [](double v) { return std::isinf(v); });
    methods[to_string(run.method)] = {
        {"frames", run.frames.size()},
        {"psnr_mean_db", finite_mean(psnrs)},
        {"psnr_infinite_frames", infinite},
        {"ssim_mean", finite_mean(ssims)},
        {"timing_ms",
         {{"foveate", stats(fov)}, {"reproject", stats(rep)}, {"bias_combine", stats(bc)},
          {"metrics", stats(met)}, {"total", stats(total)}}},
    };
  }
  return {{"schema", "fovwrs.summary.v1"},
          {"frame_count", runs_.empty() ? 0 : runs_.front().frames.size()},
          {"methods", methods}};
}

void RunReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "metrics.csv");
    if (!out) fail(ErrorKind::kIo, "cannot create " + (dir / "metrics.csv").string());
    out << csv();
  }
  std::ofstream out(dir / "summary.json");
  if (!out) fail(ErrorKind::kIo, "cannot create " + (dir / "summary.json").string());
  out << summary().dump(2) << "\n";
}

}  // namespace fovwrs
