// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "scanpath.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace fovwrs {

Scanpath::Scanpath(std::vector<GazeSample> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (i == 0 && r.frame != 0) fail(ErrorKind::kInvalidInput, "scanpath must start at frame 0");
    if (i > 0 && r.frame <= records_[i - 1].frame) {
      fail(ErrorKind::kInvalidInput, "scanpath frames must strictly increase");
    }
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) fail(ErrorKind::kInvalidInput, "non-finite gaze");
  }
}

PixelPos Scanpath::gaze_at(std::int64_t frame) const {
  if (records_.empty()) fail(ErrorKind::kInvalidInput, "empty scanpath");
  auto it = std::upper_bound(records_.begin(), records_.end(), frame,
                             [](std::int64_t f, const GazeSample& s) { return f < s.frame; });
  if (it == records_.begin()) return {records_.front().x, records_.front().y};
  --it;
  return {it->x, it->y};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::kParse, "scanpath line " + std::to_string(line) + ": " + what);
}

template <typename T>
std::string shortest(T v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Scanpath parse_scanpath_text(const std::string& text, std::optional<FrameBounds> bounds) {
  std::vector<GazeSample> records;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    std::string_view fields[3];
    std::size_t start = 0;
    int n = 0;
    for (; n < 3; ++n) {
      const std::size_t comma = line.find(',', start);
      if (n < 2 && comma == std::string_view::npos) break;
      fields[n] = line.substr(start, n < 2 ? comma - start : std::string_view::npos);
      start = comma + 1;
    }
    GazeSample s;
    const bool ok = n == 3 && parse_number(fields[0], s.frame) && parse_number(fields[1], s.x) &&
                    parse_number(fields[2], s.y);
    if (!ok) {
      if (records.empty() && line_no == 1) continue;  // header
      parse_fail(line_no, "expected frame_index,gx_px,gy_px");
    }
    if (records.empty() && s.frame != 0) parse_fail(line_no, "first record must be frame 0");
    if (!records.empty() && s.frame <= records.back().frame) parse_fail(line_no, "frame index not increasing");
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x < 0.0 || s.y < 0.0 ||
        (bounds && (s.x > bounds->width - 1 || s.y > bounds->height - 1))) {
      parse_fail(line_no, "gaze coordinate out of bounds");
    }
    records.push_back(s);
  }
  if (records.empty()) fail(ErrorKind::kParse, "scanpath has no records");
  return Scanpath(std::move(records));
}

Scanpath parse_scanpath(const std::filesystem::path& path, std::optional<FrameBounds> bounds) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open scanpath " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scanpath_text(ss.str(), bounds);
}

std::string format_scanpath(const Scanpath& path) {
  std::string out = "frame_index,gx_px,gy_px\n";
  for (const auto& r : path.records()) {
    out += shortest(r.frame);
    out += ',';
    out += shortest(r.x);
    out += ',';
    out += shortest(r.y);
    out += '\n';
  }
  return out;
}

void write_scanpath(const std::filesystem::path& path, const Scanpath& scanpath) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot create " + path.string());
  out << format_scanpath(scanpath);
}

void ScanpathSynthParams::validate() const {
  if (fixations < 1 || fixation_frames < 1) fail(ErrorKind::kInvalidInput, "fixation counts must be positive");
  if (!(saccade_deg >= 0.0) || !(microsaccade_sigma_deg >= 0.0)) {
    fail(ErrorKind::kInvalidInput, "saccade length and jitter must be non-negative");
  }
}

namespace {

double reflect(double v, double hi) {
  if (hi <= 0.0) return 0.0;
  const double period = 2.0 * hi;
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  return r > hi ? period - r : r;
}

// Counter streams for the synthesizer; pixel slot 0 = directions, 1 = jitter.
constexpr std::uint64_t kDirectionStream = 0;
constexpr std::uint64_t kJitterStream = 1;

}  // namespace

std::vector<PixelPos> synth_fixation_centers(const ScanpathSynthParams& p, const DisplayGeometry& geom) {
  p.validate();
  geom.validate();
  const CounterRng rng(p.seed);
  const double ppd = geom.pixels_per_degree();
  const double xmax = geom.width_px - 1, ymax = geom.height_px - 1;
  std::vector<PixelPos> centers;
  PixelPos c{xmax / 2.0, ymax / 2.0};
  for (std::int32_t k = 0; k < p.fixations; ++k) {
    if (k > 0) {
      const double theta = 2.0 * std::numbers::pi * rng.draw(static_cast<std::uint64_t>(k), kDirectionStream).value();
      c = {reflect(c.x + p.saccade_deg * ppd * std::cos(theta), xmax),
           reflect(c.y + p.saccade_deg * ppd * std::sin(theta), ymax)};
    }
    centers.push_back(c);
  }
  return centers;
}

Scanpath synth_scanpath(const ScanpathSynthParams& p, const DisplayGeometry& geom) {
  const auto centers = synth_fixation_centers(p, geom);
  const CounterRng rng(p.seed);
  const double sigma_px = p.microsaccade_sigma_deg * geom.pixels_per_degree();
  const double xmax = geom.width_px - 1, ymax = geom.height_px - 1;
  std::vector<GazeSample> records;
  records.reserve(centers.size() * static_cast<std::size_t>(p.fixation_frames));
  std::int64_t frame = 0;
  for (const PixelPos& c : centers) {
    for (std::int32_t i = 0; i < p.fixation_frames; ++i, ++frame) {
      double x = c.x, y = c.y;
      if (sigma_px > 0.0) {
        const auto n = rng.normal_pair(static_cast<std::uint64_t>(frame), kJitterStream, 0);
        x = std::clamp(x + sigma_px * n[0], 0.0, xmax);
        y = std::clamp(y + sigma_px * n[1], 0.0, ymax);
      }
      records.push_back({frame, x, y});
    }
  }
  return Scanpath(std::move(records));
}

}  // namespace fovwrs
