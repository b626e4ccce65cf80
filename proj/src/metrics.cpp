// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace fovwrs {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 1.0) * (0.01 * 1.0);
constexpr double kC2 = (0.03 * 1.0) * (0.03 * 1.0);

void require_same_shape(const Image& a, const Image& b) {
  if (!a.same_shape(b)) {
    fail(ErrorKind::kInvalidInput, "image dimensions differ: " + std::to_string(a.width()) + "x" +
                                       std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                       "x" + std::to_string(b.height()));
  }
}

std::array<double, kWindow> window_weights() {
  std::array<double, kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    k[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b);
  double sse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = double(a[i].r) - b[i].r, dg = double(a[i].g) - b[i].g, db = double(a[i].b) - b[i].b;
    sse += dr * dr + dg * dg + db * db;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / (3.0 * static_cast<double>(a.size()));
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& a, const Image& b, int threads) {
  require_same_shape(a, b);
  const std::int32_t w = a.width(), h = a.height();
  if (w < kWindow || h < kWindow) {
    fail(ErrorKind::kInvalidInput, "SSIM needs images of at least 11x11 pixels");
  }
  const auto k = window_weights();
  const Plane<float> la = luma(a), lb = luma(b);

  // Horizontal pass over the five moment images, valid region only.
  const std::int32_t ow = w - kWindow + 1, oh = h - kWindow + 1;
  constexpr int kMoments = 5;  // a, b, a^2, b^2, ab
  std::vector<double> horiz(static_cast<std::size_t>(kMoments) * ow * h);
  auto hidx = [&](int m, std::int32_t x, std::int32_t y) {
    return (static_cast<std::size_t>(m) * h + static_cast<std::size_t>(y)) * ow + static_cast<std::size_t>(x);
  };
  parallel_rows(h, threads, [&](std::int32_t y) {
    for (std::int32_t x = 0; x < ow; ++x) {
      double s[kMoments] = {0, 0, 0, 0, 0};
      for (int i = 0; i < kWindow; ++i) {
        const double va = la.at(x + i, y), vb = lb.at(x + i, y);
        const double kv = k[static_cast<std::size_t>(i)];
        s[0] += kv * va;
        s[1] += kv * vb;
        s[2] += kv * va * va;
        s[3] += kv * vb * vb;
        s[4] += kv * va * vb;
      }
      for (int m = 0; m < kMoments; ++m) horiz[hidx(m, x, y)] = s[m];
    }
  });

  std::vector<double> row_sums(static_cast<std::size_t>(oh), 0.0);
  parallel_rows(oh, threads, [&](std::int32_t y) {
    double acc = 0.0;
    for (std::int32_t x = 0; x < ow; ++x) {
      double s[kMoments] = {0, 0, 0, 0, 0};
      for (int i = 0; i < kWindow; ++i) {
        const double kv = k[static_cast<std::size_t>(i)];
        for (int m = 0; m < kMoments; ++m) s[m] += kv * horiz[hidx(m, x, y + i)];
      }
      const double mu_a = s[0], mu_b = s[1];
      const double var_a = s[2] - mu_a * mu_a;
      const double var_b = s[3] - mu_b * mu_b;
      const double cov = s[4] - mu_a * mu_b;
      acc += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
             ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
    }
    row_sums[static_cast<std::size_t>(y)] = acc;
  });
  double total = 0.0;
  for (double v : row_sums) total += v;
  return total / (static_cast<double>(ow) * oh);
}

}  // namespace fovwrs
