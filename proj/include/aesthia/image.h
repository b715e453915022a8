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

// Pixel rasters at the three quantization levels the measures work on.

#ifndef AESTHIA_IMAGE_H_
#define AESTHIA_IMAGE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aesthia/error.h"

namespace aesthia {

// Three-level code produced by coarse-graining.
enum class Tone : std::uint8_t { kWhite = 0, kGrey = 1, kBlack = 2 };

namespace internal {

struct GrayTag {
  static constexpr const char* kName = "GrayImage";
  static bool Admissible(std::uint8_t) { return true; }
};

struct BinaryTag {
  static constexpr const char* kName = "BinaryImage";
  static bool Admissible(std::uint8_t v) { return v <= 1; }
};

struct TernaryTag {
  static constexpr const char* kName = "TernaryImage";
  static bool Admissible(Tone t) {
    return t == Tone::kWhite || t == Tone::kGrey || t == Tone::kBlack;
  }
};

}  // namespace internal

// Row-major raster with strictly positive dimensions. The tag fixes the set
// of admissible pixel values, which is checked whenever a raster is built
// from caller-supplied data.
template <typename Pixel, typename Tag>
class Raster {
 public:
  using value_type = Pixel;

  Raster(int width, int height, Pixel fill = Pixel{})
      : width_(width), height_(height) {
    CheckDims();
    if (!Tag::Admissible(fill)) {
      throw ParameterError(std::string(Tag::kName) + ": inadmissible fill value");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  Raster(int width, int height, std::vector<Pixel> data)
      : width_(width), height_(height), data_(std::move(data)) {
    CheckDims();
    if (data_.size() != static_cast<std::size_t>(width) * height) {
      throw ParameterError(std::string(Tag::kName) +
                           ": data length does not equal width*height");
    }
    for (Pixel p : data_) {
      if (!Tag::Admissible(p)) {
        throw ParameterError(std::string(Tag::kName) +
                             ": inadmissible pixel value");
      }
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  Pixel at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  void set(int x, int y, Pixel v) {
    data_[static_cast<std::size_t>(y) * width_ + x] = v;
  }

  std::span<const Pixel> pixels() const { return data_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  void CheckDims() const {
    if (width_ < 1 || height_ < 1) {
      throw ParameterError(std::string(Tag::kName) +
                           ": width and height must be >= 1");
    }
  }

  int width_;
  int height_;
  std::vector<Pixel> data_;
};

// 8-bit luminance, 0 = black.
using GrayImage = Raster<std::uint8_t, internal::GrayTag>;
// 1 = foreground (dark ink on the usual light ground).
using BinaryImage = Raster<std::uint8_t, internal::BinaryTag>;
using TernaryImage = Raster<Tone, internal::TernaryTag>;

struct Histogram {
  std::array<std::uint64_t, 256> bins{};
  std::uint64_t total = 0;
};

Histogram LuminanceHistogram(const GrayImage& img);

// Number of pixels equal to 1.
std::size_t CountForeground(const BinaryImage& img);

}  // namespace aesthia

#endif  // AESTHIA_IMAGE_H_
