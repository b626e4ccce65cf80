// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "foveation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace fovwrs {

namespace {

bool is_power_of_two(std::int32_t v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

inline Rgb lerp(const Rgb& a, const Rgb& b, float t) noexcept {
  return {a.r + t * (b.r - a.r), a.g + t * (b.g - a.g), a.b + t * (b.b - a.b)};
}

inline double ramp(double e, double start, double width) noexcept {
  return std::clamp((e - start) / width, 0.0, 1.0);
}

void require_matching(const Image& frame, const DisplayGeometry& geom) {
  geom.validate();
  if (!frame.same_shape(geom.width_px, geom.height_px)) {
    fail(ErrorKind::kInvalidInput,
         "frame " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
             " does not match display " + std::to_string(geom.width_px) + "x" +
             std::to_string(geom.height_px));
  }
}

Image foveate_mip(const Image& frame, PixelPos gaze, const FoveationConfig& cfg,
                  const DisplayGeometry& geom, int threads) {
  const Image mid = block_means(frame, cfg.mid_block);
  const Image far = block_means(frame, cfg.far_block);
  Image out(frame.width(), frame.height());
  parallel_rows(frame.height(), threads, [&](std::int32_t y) {
    for (std::int32_t x = 0; x < frame.width(); ++x) {
      const double e = eccentricity({double(x), double(y)}, gaze, geom);
      if (e <= cfg.r_f) {
        out.at(x, y) = frame.at(x, y);
        continue;
      }
      const RegionBlend rb = region_blend(e, cfg);
      auto region_value = [&](Region r) {
        switch (r) {
          case Region::kFovea: return frame.at(x, y);
          case Region::kMid: return sample_bilinear(mid, cfg.mid_block, x, y);
          case Region::kFar: break;
        }
        return sample_bilinear(far, cfg.far_block, x, y);
      };
      const Rgb inner = region_value(rb.inner);
      if (rb.t == 0.0 || rb.inner == rb.outer) {
        out.at(x, y) = inner;
      } else {
        out.at(x, y) = lerp(inner, region_value(rb.outer), static_cast<float>(rb.t));
      }
    }
  });
  return out;
}

// Kernels are cached per sigma quantized to 1/32 px.
constexpr double kSigmaQuantum = 1.0 / 32.0;

std::vector<float> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<float> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = static_cast<float>(v);
    sum += v;
  }
  for (float& v : k) v = static_cast<float>(v / sum);
  return k;
}

Image foveate_gaussian(const Image& frame, PixelPos gaze, const FoveationConfig& cfg,
                       const DisplayGeometry& geom, int threads) {
  const std::int32_t w = frame.width(), h = frame.height();
  const double e_max = max_eccentricity(gaze, geom);
  const double span = e_max - cfg.r_f;

  // Quantized sigma index per pixel; 0 means no blur.
  Plane<std::int32_t> level(w, h, 0);
  std::int32_t max_level = 0;
  if (span > 0.0) {
    for (std::int32_t y = 0; y < h; ++y) {
      for (std::int32_t x = 0; x < w; ++x) {
        const double e = eccentricity({double(x), double(y)}, gaze, geom);
        if (e <= cfg.r_f) continue;
        const double sigma = cfg.sigma_max * std::min(1.0, (e - cfg.r_f) / span);
        const auto q = static_cast<std::int32_t>(std::lround(sigma / kSigmaQuantum));
        level.at(x, y) = q;
        max_level = std::max(max_level, q);
      }
    }
  }
  std::vector<std::vector<float>> kernels(static_cast<std::size_t>(max_level) + 1);
  for (std::int32_t q = 1; q <= max_level; ++q) {
    kernels[static_cast<std::size_t>(q)] = gaussian_kernel(q * kSigmaQuantum);
  }

  auto convolve = [&](const Image& src, Image& dst, bool horizontal) {
    parallel_rows(h, threads, [&](std::int32_t y) {
      for (std::int32_t x = 0; x < w; ++x) {
        const std::int32_t q = level.at(x, y);
        if (q == 0) {
          dst.at(x, y) = src.at(x, y);
          continue;
        }
        const auto& k = kernels[static_cast<std::size_t>(q)];
        const int radius = static_cast<int>(k.size() / 2);
        // Accumulate offsets from the center tap so flat regions stay bit-exact.
        const Rgb c = src.at(x, y);
        float r = 0, g = 0, b = 0;
        for (int i = -radius; i <= radius; ++i) {
          const std::int32_t sx = horizontal ? std::clamp(x + i, 0, w - 1) : x;
          const std::int32_t sy = horizontal ? y : std::clamp(y + i, 0, h - 1);
          const float kv = k[static_cast<std::size_t>(i + radius)];
          const Rgb& s = src.at(sx, sy);
          r += kv * (s.r - c.r);
          g += kv * (s.g - c.g);
          b += kv * (s.b - c.b);
        }
        dst.at(x, y) = {c.r + r, c.g + g, c.b + b};
      }
    });
  };
  Image tmp(w, h), out(w, h);
  convolve(frame, tmp, true);
  convolve(tmp, out, false);
  return out;
}

}  // namespace

void FoveationConfig::validate() const {
  if (!(r_f > 0.0) || !(mid_radius > r_f)) {
    fail(ErrorKind::kInvalidInput, "foveation radii must satisfy 0 < r_f < mid_radius");
  }
  if (!is_power_of_two(mid_block) || !is_power_of_two(far_block) || mid_block < 2 ||
      far_block < mid_block) {
    fail(ErrorKind::kInvalidInput,
         "block sizes must be powers of two with far_block >= mid_block >= 2");
  }
  if (!(blend_deg > 0.0)) fail(ErrorKind::kInvalidInput, "blend_deg must be positive");
  if (!(sigma_max >= 0.0) || !std::isfinite(sigma_max)) {
    fail(ErrorKind::kInvalidInput, "sigma_max must be finite and non-negative");
  }
}

RegionBlend region_blend(double e, const FoveationConfig& cfg) {
  if (!(e >= 0.0)) fail(ErrorKind::kInvalidInput, "eccentricity must be non-negative");
  const double half = cfg.blend_deg / 2.0;
  const double fovea_band_end = cfg.r_f + cfg.blend_deg;
  const double far_band_start = std::max(cfg.mid_radius - half, fovea_band_end);
  if (e <= cfg.r_f) return {Region::kFovea, Region::kFovea, 0.0};
  if (e <= fovea_band_end) return {Region::kFovea, Region::kMid, ramp(e, cfg.r_f, cfg.blend_deg)};
  if (e < far_band_start) return {Region::kMid, Region::kMid, 0.0};
  if (e <= cfg.mid_radius + half) {
    return {Region::kMid, Region::kFar, ramp(e, cfg.mid_radius - half, cfg.blend_deg)};
  }
  return {Region::kFar, Region::kFar, 0.0};
}

Image block_means(const Image& frame, std::int32_t block) {
  const std::int32_t gw = (frame.width() + block - 1) / block;
  const std::int32_t gh = (frame.height() + block - 1) / block;
  Image grid(gw, gh);
  for (std::int32_t by = 0; by < gh; ++by) {
    for (std::int32_t bx = 0; bx < gw; ++bx) {
      const std::int32_t x1 = std::min(frame.width(), (bx + 1) * block);
      const std::int32_t y1 = std::min(frame.height(), (by + 1) * block);
      double r = 0, g = 0, b = 0;
      for (std::int32_t y = by * block; y < y1; ++y) {
        for (std::int32_t x = bx * block; x < x1; ++x) {
          const Rgb& c = frame.at(x, y);
          r += c.r;
          g += c.g;
          b += c.b;
        }
      }
      const double n = double(x1 - bx * block) * double(y1 - by * block);
      grid.at(bx, by) = {static_cast<float>(r / n), static_cast<float>(g / n), static_cast<float>(b / n)};
    }
  }
  return grid;
}

Rgb sample_bilinear(const Image& grid, std::int32_t block, std::int32_t x, std::int32_t y) noexcept {
  const double center = (block - 1) / 2.0;
  const double gx = (x - center) / block;
  const double gy = (y - center) / block;
  const double fx0 = std::floor(gx), fy0 = std::floor(gy);
  const float tx = static_cast<float>(gx - fx0);
  const float ty = static_cast<float>(gy - fy0);
  const std::int32_t x0 = std::clamp(static_cast<std::int32_t>(fx0), 0, grid.width() - 1);
  const std::int32_t x1 = std::clamp(static_cast<std::int32_t>(fx0) + 1, 0, grid.width() - 1);
  const std::int32_t y0 = std::clamp(static_cast<std::int32_t>(fy0), 0, grid.height() - 1);
  const std::int32_t y1 = std::clamp(static_cast<std::int32_t>(fy0) + 1, 0, grid.height() - 1);
  const Rgb top = lerp(grid.at(x0, y0), grid.at(x1, y0), tx);
  const Rgb bottom = lerp(grid.at(x0, y1), grid.at(x1, y1), tx);
  return lerp(top, bottom, ty);
}

Image foveate(const Image& frame, PixelPos gaze, const FoveationConfig& cfg,
              const DisplayGeometry& geom, int threads) {
  cfg.validate();
  require_matching(frame, geom);
  if (cfg.method == FoveationMethod::kGaussian) return foveate_gaussian(frame, gaze, cfg, geom, threads);
  return foveate_mip(frame, gaze, cfg, geom, threads);
}

}  // namespace fovwrs
