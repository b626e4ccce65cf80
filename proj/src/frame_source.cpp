// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "frame_source.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>

#include "errors.hpp"
#include "png_io.hpp"
#include "rng.hpp"

namespace fovwrs {

namespace {

inline float q8(double v) noexcept {
  return static_cast<float>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5) / 255.0);
}

inline Rgb quantized(double r, double g, double b) noexcept { return {q8(r), q8(g), q8(b)}; }

inline Rgb mix(const Rgb& a, const Rgb& b, double t) noexcept {
  return quantized(a.r + t * (b.r - a.r), a.g + t * (b.g - a.g), a.b + t * (b.b - a.b));
}

inline std::uint32_t hash32(std::uint64_t seed, std::int64_t a, std::int64_t b) noexcept {
  const auto out = philox4x32({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                               static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)},
                              {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return out[0];
}

// Improved gradient noise with a seeded permutation.
class GradientNoise {
 public:
  explicit GradientNoise(std::uint64_t seed) {
    std::iota(perm_.begin(), perm_.begin() + 256, 0);
    for (int i = 255; i > 0; --i) {
      const auto j = static_cast<int>(hash32(seed, i, 0x9e37) % static_cast<std::uint32_t>(i + 1));
      std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < 256; ++i) perm_[static_cast<std::size_t>(256 + i)] = perm_[static_cast<std::size_t>(i)];
  }

  double operator()(double x, double y) const noexcept {
    const double fx = std::floor(x), fy = std::floor(y);
    const int xi = static_cast<int>(static_cast<std::int64_t>(fx) & 255);
    const int yi = static_cast<int>(static_cast<std::int64_t>(fy) & 255);
    const double xf = x - fx, yf = y - fy;
    const double u = fade(xf), v = fade(yf);
    const int aa = p(p(xi) + yi), ab = p(p(xi) + yi + 1);
    const int ba = p(p(xi + 1) + yi), bb = p(p(xi + 1) + yi + 1);
    const double x1 = lerp(grad(aa, xf, yf), grad(ba, xf - 1, yf), u);
    const double x2 = lerp(grad(ab, xf, yf - 1), grad(bb, xf - 1, yf - 1), u);
    return lerp(x1, x2, v);  // roughly in [-1, 1]
  }

 private:
  int p(int i) const noexcept { return perm_[static_cast<std::size_t>(i)]; }
  static double fade(double t) noexcept { return t * t * t * (t * (t * 6 - 15) + 10); }
  static double lerp(double a, double b, double t) noexcept { return a + t * (b - a); }
  static double grad(int h, double x, double y) noexcept {
    switch (h & 7) {
      case 0: return x + y;
      case 1: return -x + y;
      case 2: return x - y;
      case 3: return -x - y;
      case 4: return x;
      case 5: return -x;
      case 6: return y;
      default: return -y;
    }
  }
  std::array<int, 512> perm_{};
};

Rgb checker_color(double wx, double wy, double scale) noexcept {
  static const Rgb kLight = quantized(0.92, 0.90, 0.84);
  static const Rgb kDark = quantized(0.08, 0.10, 0.16);
  const auto cx = static_cast<std::int64_t>(std::floor(wx / scale));
  const auto cy = static_cast<std::int64_t>(std::floor(wy / scale));
  return ((cx + cy) & 1) ? kDark : kLight;
}

Rgb perlin_color(const GradientNoise& noise, double wx, double wy, double scale) noexcept {
  // Four octaves starting at the feature scale.
  double n = 0.0, amp = 0.5, freq = 1.0 / scale;
  for (int o = 0; o < 4; ++o) {
    n += amp * noise(wx * freq, wy * freq);
    amp *= 0.5;
    freq *= 2.0;
  }
  const double t = std::clamp(0.5 + 0.9 * n, 0.0, 1.0);
  static const Rgb kLow{0.16f, 0.22f, 0.10f};
  static const Rgb kMid{0.55f, 0.42f, 0.24f};
  static const Rgb kHigh{0.93f, 0.86f, 0.70f};
  return t < 0.5 ? mix(kLow, kMid, t * 2.0) : mix(kMid, kHigh, (t - 0.5) * 2.0);
}

Rgb text_color(std::uint64_t seed, double wx, double wy, double scale) noexcept {
  static const Rgb kPaper = quantized(0.96, 0.95, 0.90);
  static const Rgb kInk = quantized(0.07, 0.07, 0.10);
  const double glyph_h = scale;
  const double cell_w = std::max(3.0, std::round(scale * 0.6));
  const double line_h = std::round(scale * 1.6);
  const auto line = static_cast<std::int64_t>(std::floor(wy / line_h));
  const double ly = wy - line * line_h - (line_h - glyph_h) / 2.0;
  if (ly < 0.0 || ly >= glyph_h) return kPaper;
  const auto col = static_cast<std::int64_t>(std::floor(wx / cell_w));
  const std::uint32_t h = hash32(seed, line, col);
  if (h % 6 == 0) return kPaper;  // word gap
  // 5x7 pseudo-glyph with one margin column on the right.
  const double lx = wx - col * cell_w;
  const int gx = static_cast<int>(std::floor(lx / cell_w * 6.0));
  const int gy = static_cast<int>(std::floor(ly / glyph_h * 7.0));
  if (gx >= 5) return kPaper;
  const std::uint32_t bits = hash32(seed ^ 0xA5A5A5A5ull, line, col) | 0x00000001u;
  // Left stem is common in Latin glyphs; keep the pattern dense enough to read as text.
  const bool stem = gx == 0 && (h & 0x10u);
  const bool on = stem || ((bits >> ((gy * 5 + gx) % 32)) & 1u);
  return on ? kInk : kPaper;
}

// Foreground bars for the layered scene; screen x of bar i's left edge.
bool occluder_at(const OccluderParams& occ, double screen_x, std::int64_t frame,
                 std::int32_t width, double camera_shift, Rgb* color) noexcept {
  const double period = static_cast<double>(width) / occ.count;
  const double shift = (camera_shift - occ.velocity) * static_cast<double>(frame);
  const double wx = screen_x + shift;
  const double local = wx - std::floor(wx / period) * period;
  if (local >= occ.width_px) return false;
  if (color) {
    const bool stripe = static_cast<std::int64_t>(std::floor(local / 6.0)) & 1;
    *color = stripe ? quantized(0.75, 0.20, 0.15) : quantized(0.85, 0.55, 0.20);
  }
  return true;
}

}  // namespace

void FrameBundle::validate() const {
  if (!depth.same_shape(color) || !motion.same_shape(color)) {
    fail(ErrorKind::kInvalidInput, "frame bundle planes have mismatched dimensions");
  }
}

std::string to_string(SceneId id) {
  switch (id) {
    case SceneId::kChecker: return "checker";
    case SceneId::kTextPanel: return "text_panel";
    case SceneId::kPerlinTexture: return "perlin_texture";
    case SceneId::kLayeredOccluders: return "layered_occluders";
  }
  return "unknown";
}

SceneId scene_from_string(const std::string& name) {
  if (name == "checker") return SceneId::kChecker;
  if (name == "text_panel") return SceneId::kTextPanel;
  if (name == "perlin_texture") return SceneId::kPerlinTexture;
  if (name == "layered_occluders") return SceneId::kLayeredOccluders;
  fail(ErrorKind::kConfig, "unknown scene id '" + name + "'");
}

void SceneSpec::validate() const {
  if (!std::isfinite(velocity)) fail(ErrorKind::kInvalidInput, "scene velocity must be finite");
  if (!(scale >= 1.0)) fail(ErrorKind::kInvalidInput, "scene scale must be >= 1");
  if (id == SceneId::kLayeredOccluders) {
    if (occluders.count < 1 || occluders.width_px < 1) {
      fail(ErrorKind::kInvalidInput, "occluder count and width must be positive");
    }
    if (!(occluders.depth > 0.0) || !(occluders.background_depth > 0.0) ||
        !std::isfinite(occluders.velocity)) {
      fail(ErrorKind::kInvalidInput, "occluder depths must be positive and velocity finite");
    }
  }
}

FrameBundle render_procedural(const SceneSpec& spec, std::int64_t frame_index,
                              const DisplayGeometry& geom) {
  spec.validate();
  geom.validate();
  const std::int32_t w = geom.width_px, h = geom.height_px;
  FrameBundle out{Image(w, h), DepthPlane(w, h, 10.0f), MotionField(w, h)};
  // Positive velocity moves content right, so motion vectors point left.
  const double shift = -spec.velocity;
  const double cam = shift * static_cast<double>(frame_index);
  const MotionVec bg_motion = frame_index > 0 ? MotionVec{static_cast<float>(shift), 0.0f} : MotionVec{};
  const GradientNoise noise(spec.seed);
  const bool layered = spec.id == SceneId::kLayeredOccluders;
  if (layered) out.depth = DepthPlane(w, h, static_cast<float>(spec.occluders.background_depth));

  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      const double wx = x + cam, wy = y;
      Rgb c;
      switch (spec.id) {
        case SceneId::kChecker: c = checker_color(wx, wy, spec.scale); break;
        case SceneId::kTextPanel: c = text_color(spec.seed, wx, wy, spec.scale); break;
        case SceneId::kPerlinTexture:
        case SceneId::kLayeredOccluders: c = perlin_color(noise, wx, wy, spec.scale); break;
      }
      MotionVec mv = bg_motion;
      if (layered) {
        Rgb fg;
        if (occluder_at(spec.occluders, x, frame_index, w, shift, &fg)) {
          c = fg;
          out.depth.at(x, y) = static_cast<float>(spec.occluders.depth);
          if (frame_index > 0) mv = {static_cast<float>(shift - spec.occluders.velocity), 0.0f};
        }
      }
      out.color.at(x, y) = c;
      out.motion.at(x, y) = mv;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sidecars

namespace {

constexpr std::size_t kHeaderBytes = 16;

void put_u32(std::vector<char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

void put_f32(std::vector<char>& buf, float f) { put_u32(buf, std::bit_cast<std::uint32_t>(f)); }

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<char>& buf) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot create " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

std::vector<char> header(const char magic[4], std::int32_t w, std::int32_t h) {
  std::vector<char> buf(magic, magic + 4);
  put_u32(buf, static_cast<std::uint32_t>(w));
  put_u32(buf, static_cast<std::uint32_t>(h));
  put_u32(buf, 0);
  return buf;
}

// Returns (width, height) after validating magic and exact payload size.
std::pair<std::int32_t, std::int32_t> check_header(const std::vector<char>& buf, const char magic[4],
                                                   std::size_t planes, const std::filesystem::path& path) {
  if (buf.size() < kHeaderBytes || std::memcmp(buf.data(), magic, 4) != 0) {
    fail(ErrorKind::kIo, "bad sidecar header in " + path.string());
  }
  const std::uint32_t w = get_u32(buf.data() + 4), h = get_u32(buf.data() + 8);
  const std::size_t expected = kHeaderBytes + planes * 4ull * w * h;
  if (buf.size() != expected || w > 1u << 16 || h > 1u << 16) {
    fail(ErrorKind::kIo, "sidecar size mismatch in " + path.string());
  }
  return {static_cast<std::int32_t>(w), static_cast<std::int32_t>(h)};
}

float get_f32(const char* p) { return std::bit_cast<float>(get_u32(p)); }

}  // namespace

void write_depth_sidecar(const std::filesystem::path& path, const DepthPlane& depth) {
  auto buf = header("FDEP", depth.width(), depth.height());
  for (float v : depth.pixels()) put_f32(buf, v);
  write_all(path, buf);
}

DepthPlane read_depth_sidecar(const std::filesystem::path& path) {
  const auto buf = read_all(path);
  const auto [w, h] = check_header(buf, "FDEP", 1, path);
  DepthPlane out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = get_f32(buf.data() + kHeaderBytes + 4 * i);
  return out;
}

void write_motion_sidecar(const std::filesystem::path& path, const MotionField& motion) {
  auto buf = header("FMOT", motion.width(), motion.height());
  for (const MotionVec& v : motion.pixels()) put_f32(buf, v.dx);
  for (const MotionVec& v : motion.pixels()) put_f32(buf, v.dy);
  write_all(path, buf);
}

MotionField read_motion_sidecar(const std::filesystem::path& path) {
  const auto buf = read_all(path);
  const auto [w, h] = check_header(buf, "FMOT", 2, path);
  MotionField out(w, h);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    out[i].dx = get_f32(buf.data() + kHeaderBytes + 4 * i);
    out[i].dy = get_f32(buf.data() + kHeaderBytes + 4 * (n + i));
  }
  return out;
}

std::vector<FrameBundle> load_sequence(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(ErrorKind::kIo, "not a directory: " + dir.string());
  static const std::regex kFramePattern(R"((\d+)\.png)");
  std::map<std::int64_t, fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, kFramePattern)) {
      frames.emplace(std::stoll(m[1].str()), entry.path());
    }
  }
  if (frames.empty()) fail(ErrorKind::kIo, "no numbered PNG frames in " + dir.string());

  std::vector<FrameBundle> seq;
  std::int64_t expected = frames.begin()->first;
  for (const auto& [index, path] : frames) {
    if (index != expected) {
      fail(ErrorKind::kIo, "gap in frame numbering before " + path.filename().string() + " (frame " +
                               std::to_string(expected) + " missing)");
    }
    ++expected;
    FrameBundle b;
    b.color = read_png(path);
    if (!seq.empty() && !b.color.same_shape(seq.front().color)) {
      fail(ErrorKind::kIo, "dimension mismatch in " + path.filename().string() + ": " +
                               std::to_string(b.color.width()) + "x" + std::to_string(b.color.height()));
    }
    const fs::path depth_path = fs::path(path).replace_extension(".fdep");
    const fs::path motion_path = fs::path(path).replace_extension(".fmot");
    b.depth = fs::exists(depth_path) ? read_depth_sidecar(depth_path)
                                     : DepthPlane(b.color.width(), b.color.height(), 1.0f);
    b.motion = fs::exists(motion_path) ? read_motion_sidecar(motion_path)
                                       : MotionField(b.color.width(), b.color.height());
    if (!b.depth.same_shape(b.color)) fail(ErrorKind::kIo, "dimension mismatch in " + depth_path.filename().string());
    if (!b.motion.same_shape(b.color)) fail(ErrorKind::kIo, "dimension mismatch in " + motion_path.filename().string());
    seq.push_back(std::move(b));
  }
  return seq;
}

}  // namespace fovwrs
