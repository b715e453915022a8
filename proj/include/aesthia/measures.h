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

// Image complexity measures.
//
// Histogram statistics (entropy, energy, skew), topology counts on the Otsu
// binarisation (contours, Euler number), compression ratios (LZW on the raw
// and on the coarse-grained raster, JPEG error times size ratio) and
// box-counting fractal dimension with its Gaussian preference score.

#ifndef AESTHIA_MEASURES_H_
#define AESTHIA_MEASURES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aesthia/image.h"

namespace aesthia {

struct MeasureConfig {
  int r_adapt = 2;            // adaptive binarisation radius (px)
  int r_cg = 5;               // coarse-grain radius (px)
  double delta = 0.23;        // coarse-grain ratio threshold
  double jpeg_quality = 0.75; // lossy codec quality in (0, 1]
  double peak = 1.35;         // preferred fractal dimension
  double sigma = 0.2;         // width of the preference curve
  int box_min = 2;            // smallest box edge (px)
  double box_max_frac = 0.25; // largest box edge / min(width, height)

  // Throws ParameterError naming the first offending field.
  void Validate() const;

  // 0.75 -> 75 on the libjpeg scale.
  int JpegQualityPercent() const;
};

// Column names used in results files, in canonical order.
inline constexpr std::array<std::string_view, 11> kMeasureNames = {
    "S", "E", "T", "gamma", "C_a", "C_s", "C_mc", "C_mc_E", "D", "D_a", "S_k"};

// Which measures to compute; indexed like kMeasureNames.
class MeasureSelection {
 public:
  static MeasureSelection All();
  // Comma-separated column names, e.g. "S,D". Throws ParameterError on
  // unknown names.
  static MeasureSelection Parse(std::string_view list);

  bool Has(std::string_view name) const;
  std::vector<std::string_view> Names() const;

 private:
  std::array<bool, kMeasureNames.size()> on_{};
};

// Every field is optional: absent means either not requested or failed, and
// failures are listed with their messages.
struct MeasureVector {
  std::optional<double> entropy;               // S, nats
  std::optional<double> energy;                // E
  std::optional<std::int64_t> contours;        // T
  std::optional<std::int64_t> euler;           // gamma
  std::optional<double> algorithmic;           // C_a
  std::optional<double> structural;            // C_s
  std::optional<double> machado_cardoso;       // C_mc
  std::optional<double> machado_cardoso_edge;  // C_mc_E
  std::optional<double> fractal_dimension;     // D
  std::optional<double> fractal_aesthetic;     // D_a
  std::optional<double> skew;                  // S_k

  std::vector<std::pair<std::string, std::string>> failures;

  // Lookup by column name from kMeasureNames.
  std::optional<double> Get(std::string_view name) const;
};

struct BoxCount {
  int size = 0;
  std::int64_t occupied = 0;
};

double Entropy(const Histogram& h);
double Energy(const Histogram& h);
// Population skewness m3 / m2^1.5. Throws DomainError for zero variance.
double Skewness(const Histogram& h);

std::int64_t Contours(const GrayImage& img);
std::int64_t EulerNumber(const GrayImage& img);

// LZW output length over the raw 8-bit buffer length.
double AlgorithmicComplexity(const GrayImage& img);
// The same ratio on the coarse-grained raster, tones written as 255/128/0.
double StructuralComplexity(const GrayImage& img, const MeasureConfig& cfg);

enum class EdgeFilter { kNone, kSobel };

// RMS(i, jpeg(i)) on [0,1] luminance times jpeg bytes / raw bytes.
double MachadoCardoso(const GrayImage& img, const MeasureConfig& cfg,
                      EdgeFilter filter);

// Box sizes box_min * 2^k up to box_max_frac * min(w, h), grid anchored at
// the origin with partial cells counted.
std::vector<BoxCount> BoxCounts(const BinaryImage& bin,
                                const MeasureConfig& cfg);
// Negative OLS slope of ln(count) on ln(size), clamped to [0, 2].
double BoxCountingDimension(const BinaryImage& bin, const MeasureConfig& cfg);
// AdaptiveBinarize(img, r_adapt) followed by BoxCountingDimension.
double FractalDimension(const GrayImage& img, const MeasureConfig& cfg);
double FractalAesthetic(double dimension, const MeasureConfig& cfg);

// Computes the selected measures, recording failures instead of throwing.
// Only an invalid config throws.
MeasureVector MeasureAll(const GrayImage& img, const MeasureConfig& cfg,
                         const MeasureSelection& selection =
                             MeasureSelection::All());

}  // namespace aesthia

#endif  // AESTHIA_MEASURES_H_
