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

#include "aesthia/imaging.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace aesthia {
namespace {

// Summed-area table with a zero row and column in front, so the sum over
// [x0, x1) x [y0, y1) is four lookups.
class IntegralImage {
 public:
  template <typename R>
  explicit IntegralImage(const R& img)
      : width_(img.width()),
        sums_(static_cast<std::size_t>(img.width() + 1) * (img.height() + 1)) {
    for (int y = 0; y < img.height(); ++y) {
      std::uint64_t row = 0;
      for (int x = 0; x < img.width(); ++x) {
        row += static_cast<std::uint64_t>(img.at(x, y));
        sums_[Index(x + 1, y + 1)] = sums_[Index(x + 1, y)] + row;
      }
    }
  }

  std::uint64_t Sum(int x0, int y0, int x1, int y1) const {
    return sums_[Index(x1, y1)] - sums_[Index(x0, y1)] - sums_[Index(x1, y0)] +
           sums_[Index(x0, y0)];
  }

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * (width_ + 1) + x;
  }

  int width_;
  std::vector<std::uint64_t> sums_;
};

struct Window {
  int x0, y0, x1, y1;
  std::uint64_t Area() const {
    return static_cast<std::uint64_t>(x1 - x0) * (y1 - y0);
  }
};

Window ClippedWindow(int x, int y, int r, int w, int h) {
  return {std::max(0, x - r), std::max(0, y - r), std::min(w, x + r + 1),
          std::min(h, y + r + 1)};
}

}  // namespace

int OtsuThreshold(const Histogram& h) {
  double total_sum = 0;
  for (int k = 0; k < 256; ++k) total_sum += static_cast<double>(k) * h.bins[k];
  const double total = static_cast<double>(h.total);

  int best_t = 0;
  double best_var = 0;
  double w0 = 0;
  double sum0 = 0;
  for (int t = 1; t < 256; ++t) {
    w0 += static_cast<double>(h.bins[t - 1]);
    sum0 += static_cast<double>(t - 1) * h.bins[t - 1];
    const double w1 = total - w0;
    if (w0 == 0 || w1 == 0) continue;
    const double diff = sum0 / w0 - (total_sum - sum0) / w1;
    const double var = w0 * w1 * diff * diff;
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t;
}

BinaryImage OtsuBinarize(const GrayImage& img) {
  const int t = OtsuThreshold(LuminanceHistogram(img));
  BinaryImage out(img.width(), img.height());
  if (t == 0) return out;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.at(x, y) < t) out.set(x, y, 1);
    }
  }
  return out;
}

BinaryImage AdaptiveBinarize(const GrayImage& img, int radius) {
  if (radius < 1) {
    throw ParameterError("adaptive binarisation radius must be >= 1, got " +
                         std::to_string(radius));
  }
  if (radius >= std::min(img.width(), img.height())) {
    throw ParameterError("adaptive binarisation radius " +
                         std::to_string(radius) +
                         " must be smaller than the image's smaller side");
  }
  const IntegralImage sums(img);
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Window w = ClippedWindow(x, y, radius, img.width(), img.height());
      // v > sum/area, compared exactly in integers.
      if (img.at(x, y) * w.Area() > sums.Sum(w.x0, w.y0, w.x1, w.y1)) {
        out.set(x, y, 1);
      }
    }
  }
  return out;
}

GrayImage SobelMagnitude(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 3 || h < 3) {
    throw ParameterError("Sobel filter needs an image of at least 3x3, got " +
                         std::to_string(w) + "x" + std::to_string(h));
  }
  auto px = [&](int x, int y) {
    return static_cast<double>(
               img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1))) /
           255.0;
  };
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const double gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const double mag = std::min(1.0, std::sqrt(gx * gx + gy * gy));
      out.set(x, y, static_cast<std::uint8_t>(std::lround(mag * 255.0)));
    }
  }
  return out;
}

TernaryImage CoarseGrain(const BinaryImage& bin, int radius, double delta) {
  if (radius < 1) {
    throw ParameterError("coarse-grain radius must be >= 1, got " +
                         std::to_string(radius));
  }
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw ParameterError("coarse-grain delta must be in [0, 0.5], got " +
                         std::to_string(delta));
  }
  const IntegralImage sums(bin);
  TernaryImage out(bin.width(), bin.height());
  for (int y = 0; y < bin.height(); ++y) {
    for (int x = 0; x < bin.width(); ++x) {
      const Window w = ClippedWindow(x, y, radius, bin.width(), bin.height());
      const double eta = static_cast<double>(sums.Sum(w.x0, w.y0, w.x1, w.y1)) /
                         static_cast<double>(w.Area());
      Tone t = Tone::kGrey;
      if (eta <= delta) {
        t = Tone::kWhite;
      } else if (eta > 1.0 - delta) {
        t = Tone::kBlack;
      }
      out.set(x, y, t);
    }
  }
  return out;
}

TernaryImage CoarseGrain(const GrayImage& img, int radius, double delta) {
  return CoarseGrain(OtsuBinarize(img), radius, delta);
}

}  // namespace aesthia
