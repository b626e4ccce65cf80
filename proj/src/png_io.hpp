// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "image.hpp"

namespace fovwrs {

/// Reads any PNG libpng understands, converted to RGB in [0,1]. Throws kIo.
Image read_png(const std::filesystem::path& path);

/// Writes 8-bit (default) or 16-bit RGB. Values are clamped to [0,1].
void write_png(const std::filesystem::path& path, const Image& img, int bit_depth = 8);

}  // namespace fovwrs
