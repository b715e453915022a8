// Copyright 2026 The Aesthia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aesthia/image_io.h"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <vector>

#include "aesthia/jpeg_codec.h"

namespace aesthia {
namespace {

struct MemoryReader {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void ReadFromMemory(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + length > reader->bytes.size()) {
    png_error(png, "truncated stream");
  }
  std::copy_n(reader->bytes.data() + reader->offset, length, out);
  reader->offset += length;
}

void PngWarning(png_structp, png_const_charp) {}

struct PngPixels {
  std::vector<std::uint8_t> samples;
  std::vector<png_bytep> rows;
  int width = 0;
  int height = 0;
  int channels = 0;
};

// Only trivially destructible state lives inside the setjmp frame.
bool ReadPng(png_structp png, png_infop info, MemoryReader* reader,
             PngPixels* out) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_read_fn(png, reader, ReadFromMemory);
  png_read_info(png, info);
  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (depth == 16) png_set_strip_16(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);
  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  out->channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out->samples.resize(stride * out->height);
  out->rows.resize(out->height);
  for (int y = 0; y < out->height; ++y) {
    out->rows[y] = out->samples.data() + stride * y;
  }
  png_read_image(png, out->rows.data());
  png_read_end(png, nullptr);
  return true;
}

GrayImage DecodePng(std::span<const std::uint8_t> bytes,
                    const std::string& name) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           nullptr, PngWarning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("libpng initialisation failed for " + name);
  }
  MemoryReader reader{bytes, 0};
  PngPixels px;
  const bool ok = ReadPng(png, info, &reader, &px);
  png_destroy_read_struct(&png, &info, nullptr);
  if (!ok) throw FormatError("corrupt PNG: " + name);

  std::vector<std::uint8_t> luma(static_cast<std::size_t>(px.width) *
                                 px.height);
  const std::size_t stride = px.samples.size() / px.height;
  for (int y = 0; y < px.height; ++y) {
    const std::uint8_t* row = px.samples.data() + stride * y;
    for (int x = 0; x < px.width; ++x) {
      const std::uint8_t* s = row + static_cast<std::size_t>(x) * px.channels;
      luma[static_cast<std::size_t>(y) * px.width + x] =
          px.channels >= 3 ? Bt601Luma(s[0], s[1], s[2]) : s[0];
    }
  }
  return GrayImage(px.width, px.height, std::move(luma));
}

bool IsPng(std::span<const std::uint8_t> b) {
  return b.size() >= 8 && png_sig_cmp(b.data(), 0, 8) == 0;
}

bool IsJpeg(std::span<const std::uint8_t> b) {
  return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

}  // namespace

std::uint8_t Bt601Luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::lround(std::min(255.0, y)));
}

GrayImage DecodeImage(std::span<const std::uint8_t> bytes,
                      const std::string& name) {
  if (IsPng(bytes)) return DecodePng(bytes, name);
  if (IsJpeg(bytes)) {
    try {
      return DecodeJpeg(bytes);
    } catch (const FormatError& e) {
      throw FormatError("corrupt JPEG: " + name + " (" + e.what() + ")");
    }
  }
  throw FormatError("unsupported or corrupt image format: " + name);
}

GrayImage LoadImage(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("image file not found: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeImage(bytes, path);
}

void WritePng(const std::string& path, int width, int height, int channels,
              std::span<const std::uint8_t> samples) {
  if (channels != 1 && channels != 3 && channels != 4) {
    throw ParameterError("WritePng: channels must be 1, 3 or 4");
  }
  if (samples.size() !=
      static_cast<std::size_t>(width) * height * channels) {
    throw ParameterError("WritePng: sample count mismatch");
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = channels == 1   ? PNG_FORMAT_GRAY
                 : channels == 3 ? PNG_FORMAT_RGB
                                 : PNG_FORMAT_RGBA;
  if (!png_image_write_to_file(&image, path.c_str(), 0, samples.data(), 0,
                               nullptr)) {
    throw IoError("cannot write PNG " + path + ": " + image.message);
  }
}

void WritePng(const std::string& path, const GrayImage& img) {
  WritePng(path, img.width(), img.height(), 1, img.pixels());
}

}  // namespace aesthia
