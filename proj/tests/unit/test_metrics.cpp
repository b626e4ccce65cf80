// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "errors.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace fovwrs {
namespace {

// 8-bit LCG image pair: b is a perturbed copy of a. Mirrors the generator used
// to produce the scikit-image reference values below.
std::pair<Image, Image> lcg_pair(std::uint64_t seed, std::int32_t w, std::int32_t h) {
  Image a(w, h), b(w, h);
  std::uint64_t s = seed;
  auto next = [&] { return s = s * 6364136223846793005ull + 1442695040888963407ull; };
  for (std::size_t i = 0; i < a.size(); ++i) {
    float* ca[3] = {&a[i].r, &a[i].g, &a[i].b};
    float* cb[3] = {&b[i].r, &b[i].g, &b[i].b};
    for (int c = 0; c < 3; ++c) {
      const int v = static_cast<int>(next() >> 56);
      const int n = static_cast<int>(next() >> 59) - 16;
      *ca[c] = float(v) / 255.0f;
      *cb[c] = float(std::clamp(v + 2 * n, 0, 255)) / 255.0f;
    }
  }
  return {a, b};
}

// Direct 11x11 evaluation of the SSIM formula at every valid window.
double brute_ssim(const Image& a, const Image& b) {
  const Plane<float> la = luma(a), lb = luma(b);
  double g[11][11], gs = 0;
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) gs += g[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double total = 0;
  int n = 0;
  for (int y = 5; y + 5 < a.height(); ++y)
    for (int x = 5; x + 5 < a.width(); ++x) {
      double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
      for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
          const double wv = g[i][j] / gs, p = la.at(x + j - 5, y + i - 5), q = lb.at(x + j - 5, y + i - 5);
          mx += wv * p;
          my += wv * q;
          sxx += wv * p * p;
          syy += wv * q * q;
          sxy += wv * p * q;
        }
      const double vx = sxx - mx * mx, vy = syy - my * my, cxy = sxy - mx * my;
      total += (2 * mx * my + c1) * (2 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++n;
    }
  return total / n;
}

TEST(Psnr, Basics) {
  const Image a(8, 8, Rgb{0.2f, 0.4f, 0.6f});
  EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
  Image b = a;
  for (auto& p : b.pixels()) p = {p.r + 1.0f / 255, p.g + 1.0f / 255, p.b - 1.0f / 255};
  EXPECT_NEAR(psnr(a, b), 48.1308036086791, 1e-4);
  const auto [c, d] = lcg_pair(3, 16, 16);
  EXPECT_EQ(psnr(c, d), psnr(d, c));
  EXPECT_THROW(psnr(a, Image(8, 9)), Error);
}

TEST(Psnr, DecreasesWithNoise) {
  const auto [a, unused] = lcg_pair(4, 32, 32);
  const CounterRng rng(1);
  double prev = std::numeric_limits<double>::infinity();
  for (double amp : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    Image n = a;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto z = rng.normal_pair(0, i, 0);
      n[i].r += float(amp * z[0]);
      n[i].g += float(amp * z[1]);
    }
    const double p = psnr(a, n);
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(Ssim, MatchesReferences) {
  // skimage.metrics.structural_similarity(gaussian_weights, sigma 1.5,
  // use_sample_covariance=False, data_range=1) on the Rec.709 luma.
  const double reference[] = {0.9690208190508417, 0.9733200989139866, 0.9710114210125182, 0.9696604193043645,
                              0.9668045542328055};
  for (int seed = 1; seed <= 5; ++seed) {
    const auto [a, b] = lcg_pair(seed, 40, 32);
    const double s = ssim(a, b);
    EXPECT_NEAR(s, reference[seed - 1], 1e-6) << "seed " << seed;
    EXPECT_NEAR(s, brute_ssim(a, b), 1e-9) << "seed " << seed;
    EXPECT_EQ(ssim(a, b, 3), s);
  }
}

TEST(Ssim, IdentityNegativeAndStructure) {
  const auto [a, unused] = lcg_pair(9, 24, 24);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);

  Image pattern(11, 11), negative(11, 11);
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 11; ++x) {
      const float v = 0.5f + 0.4f * std::sin(x * 0.9f + y * 0.4f);
      pattern.at(x, y) = {v, v, v};
      negative.at(x, y) = {1 - v, 1 - v, 1 - v};
    }
  EXPECT_LT(ssim(pattern, negative), 0.0);
  EXPECT_NEAR(ssim(pattern, negative), brute_ssim(pattern, negative), 1e-9);

  Image structured(32, 32), shifted(32, 32), shuffled(32, 32);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      const float v = ((x / 4 + y / 4) % 2) ? 0.8f : 0.2f;
      structured.at(x, y) = {v, v, v};
      shifted.at(x, y) = {v + 0.02f, v + 0.02f, v + 0.02f};
    }
  const CounterRng rng(2);
  std::vector<Rgb> px(structured.pixels().begin(), structured.pixels().end());
  for (std::size_t i = px.size() - 1; i > 0; --i) {
    std::swap(px[i], px[static_cast<std::size_t>(rng.draw(0, i).value() * (i + 1))]);
  }
  std::copy(px.begin(), px.end(), shuffled.pixels().begin());
  EXPECT_GT(ssim(structured, shifted), ssim(structured, shuffled));
}

TEST(Ssim, RejectsSmallOrMismatched) {
  EXPECT_THROW(ssim(Image(10, 20), Image(10, 20)), Error);
  EXPECT_THROW(ssim(Image(12, 12), Image(12, 13)), Error);
}

MethodRun make_run(Method m, int frames, double base) {
  MethodRun r{m, {}};
  for (int i = 0; i < frames; ++i) {
    FrameMetrics f;
    f.frame = i;
    f.psnr_db = base + i;
    f.ssim = 0.5 + 0.01 * i;
    f.timings = {1.0 + i, 2.0, 3.0};
    f.metrics_ms = 0.5;
    r.frames.push_back(f);
  }
  return r;
}

TEST(Report, CsvRowsAndSummaryMeans) {
  const RunReport single({make_run(Method::kFov, 1, 30)});
  std::istringstream lines(single.csv());
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  EXPECT_EQ(line, "frame,method,psnr_db,ssim,lpips,fovvideovdp,foveate_ms,reproject_ms,bias_combine_ms,metrics_ms,total_ms");
  while (std::getline(lines, line)) rows += !line.empty();
  EXPECT_EQ(rows, 1);

  const RunReport r({make_run(Method::kFov, 4, 30), make_run(Method::kWrs, 4, 32)});
  const nlohmann::json s = r.summary();
  EXPECT_DOUBLE_EQ(s["methods"]["fov"]["psnr_mean_db"].get<double>(), 31.5);
  EXPECT_DOUBLE_EQ(s["methods"]["wrs"]["ssim_mean"].get<double>(), 0.515);
  EXPECT_EQ(s["frame_count"], 4);
  EXPECT_EQ(nlohmann::json::parse(s.dump()), s);
}

TEST(Report, InfinitePsnrExcludedFromMean) {
  MethodRun run = make_run(Method::kWrs, 3, 30);
  run.frames[1].psnr_db = std::numeric_limits<double>::infinity();
  const RunReport r({run});
  EXPECT_DOUBLE_EQ(r.summary()["methods"]["wrs"]["psnr_mean_db"].get<double>(), 31.0);
  EXPECT_EQ(r.summary()["methods"]["wrs"]["psnr_infinite_frames"], 1);
  EXPECT_NE(r.csv().find(",inf,"), std::string::npos);
}

TEST(Report, MisalignedRejected) {
  EXPECT_THROW(RunReport({make_run(Method::kFov, 3, 30), make_run(Method::kWrs, 4, 30)}), Error);
  MethodRun shifted = make_run(Method::kWrs, 3, 30);
  shifted.frames[2].frame = 7;
  EXPECT_THROW(RunReport({make_run(Method::kFov, 3, 30), shifted}), Error);
}

TEST(Report, WritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "fovwrs_report_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  RunReport({make_run(Method::kFov, 2, 30)}).write(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "metrics.csv"));
  std::ifstream in(dir / "summary.json");
  EXPECT_EQ(nlohmann::json::parse(in)["schema"], "fovwrs.summary.v1");
  std::filesystem::remove_all(dir);
}

TEST(Percentile, NearestRank) {
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 50), 3);
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 100), 5);
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 0), 1);
  EXPECT_EQ(percentile({}, 50), 0);
}

}  // namespace
}  // namespace fovwrs
