// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "image.hpp"

namespace fovwrs {

/// 10 log10(1 / MSE) over all channels; +infinity for identical images.
double psnr(const Image& a, const Image& b);

/// Mean SSIM of Rec.709 luma over every fully-contained 11x11 Gaussian window
/// (sigma 1.5, K1 0.01, K2 0.03, dynamic range 1).
double ssim(const Image& a, const Image& b, int threads = 1);

}  // namespace fovwrs
