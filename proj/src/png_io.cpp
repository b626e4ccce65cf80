// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <memory>
#include <vector>

#include "errors.hpp"

namespace fovwrs {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

}  // namespace

Image read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(ErrorKind::kIo, "cannot open " + path.string());
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    fail(ErrorKind::kIo, "not a PNG file: " + path.string());
  }
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorKind::kIo, "libpng initialization failed for " + path.string());
  }
  Image img;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorKind::kIo, "cannot decode " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  if (bit_depth == 16) png_set_swap(png);  // host order on little-endian targets
  png_read_update_info(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  const bool wide = png_get_bit_depth(png, info) == 16;
  buffer.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = buffer.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  img = Image(static_cast<std::int32_t>(width), static_cast<std::int32_t>(height));
  for (png_uint_32 y = 0; y < height; ++y) {
    for (png_uint_32 x = 0; x < width; ++x) {
      float ch[3];
      for (int c = 0; c < 3; ++c) {
        if (wide) {
          std::uint16_t v;
          std::memcpy(&v, rows[y] + (x * 3 + c) * 2, 2);
          ch[c] = v / 65535.0f;
        } else {
          ch[c] = rows[y][x * 3 + c] / 255.0f;
        }
      }
      img.at(static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)) = {ch[0], ch[1], ch[2]};
    }
  }
  return img;
}

void write_png(const std::filesystem::path& path, const Image& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) fail(ErrorKind::kInvalidInput, "PNG bit depth must be 8 or 16");
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) fail(ErrorKind::kIo, "cannot create " + path.string());
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_fn, png_warning_fn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::kIo, "libpng initialization failed for " + path.string());
  }
  const std::size_t channels = static_cast<std::size_t>(img.width()) * 3;
  std::vector<png_byte> row(channels * static_cast<std::size_t>(bit_depth / 8));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::kIo, "cannot encode " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()),
               bit_depth, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 3);
  png_write_info(png, info);
  for (std::int32_t y = 0; y < img.height(); ++y) {
    const auto src = img.row(y);
    for (std::size_t x = 0; x < src.size(); ++x) {
      const float ch[3] = {src[x].r, src[x].g, src[x].b};
      for (int c = 0; c < 3; ++c) {
        const float v = std::clamp(ch[c], 0.0f, 1.0f);
        if (bit_depth == 8) {
          row[x * 3 + c] = static_cast<png_byte>(std::floor(v * 255.0f + 0.5f));
        } else {
          const auto q = static_cast<std::uint16_t>(std::floor(v * 65535.0f + 0.5f));
          row[(x * 3 + c) * 2] = static_cast<png_byte>(q >> 8);  // PNG is big-endian
          row[(x * 3 + c) * 2 + 1] = static_cast<png_byte>(q & 0xFF);
        }
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace fovwrs
