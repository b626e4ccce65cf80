// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fovwrs {

struct Rgb {
  float r = 0.0f;
  float g = 0.0f;
  float b = 0.0f;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major single-channel plane.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(std::int32_t width, std::int32_t height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  std::int32_t width() const noexcept { return width_; }
  std::int32_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(std::int32_t x, std::int32_t y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  T& at(std::int32_t x, std::int32_t y) noexcept { return data_[index(x, y)]; }
  const T& at(std::int32_t x, std::int32_t y) const noexcept { return data_[index(x, y)]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<T> row(std::int32_t y) noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(std::int32_t y) const noexcept {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }
  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  bool same_shape(std::int32_t w, std::int32_t h) const noexcept { return w == width_ && h == height_; }
  template <typename U>
  bool same_shape(const Plane<U>& o) const noexcept { return same_shape(o.width(), o.height()); }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::int32_t width_ = 0;
  std::int32_t height_ = 0;
  std::vector<T> data_;
};

using Image = Plane<Rgb>;
using DepthPlane = Plane<float>;

struct MotionVec {
  float dx = 0.0f;
  float dy = 0.0f;
  friend bool operator==(const MotionVec&, const MotionVec&) = default;
};
/// Offset from a current pixel to its position in the previous frame.
using MotionField = Plane<MotionVec>;

/// Per-pixel Rec.709 luma.
Plane<float> luma(const Image& img);

/// Quantizes [0,1] floats to 8-bit (round half up) row-major RGB bytes.
std::vector<std::uint8_t> to_rgb8(const Image& img);

/// 64-bit FNV-1a over the 8-bit quantized pixels; used for run manifests.
std::uint64_t frame_hash(const Image& img);

}  // namespace fovwrs
