// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pipeline.hpp"

namespace fovwrs {

struct FrameMetrics {
  std::int64_t frame = 0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  StageTimings timings;
  double metrics_ms = 0.0;
};

struct MethodRun {
  Method method = Method::kFov;
  std::vector<FrameMetrics> frames;
};

/// Per-frame metrics for every method plus derived summaries.
class RunReport {
 public:
  /// Throws kInvalidInput when methods disagree on frame count or frame indices.
  explicit RunReport(std::vector<MethodRun> runs);

  const std::vector<MethodRun>& runs() const noexcept { return runs_; }

  /// One row per frame per method. Columns lpips and fovvideovdp are reserved
  /// for external tools and left empty.
  std::string csv() const;
  nlohmann::json summary() const;

  /// Writes metrics.csv and summary.json into `dir`.
  void write(const std::filesystem::path& dir) const;

 private:
  std::vector<MethodRun> runs_;
};

/// Nearest-rank percentile of `values` (p in [0,100]); 0 for an empty input.
double percentile(std::vector<double> values, double p);

/// Arithmetic mean of the finite entries; infinite PSNR frames are excluded.
double finite_mean(const std::vector<double>& values);

}  // namespace fovwrs
