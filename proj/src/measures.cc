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

#include "aesthia/measures.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "aesthia/imaging.h"
#include "aesthia/jpeg_codec.h"
#include "aesthia/lzw.h"
#include "aesthia/topology.h"

namespace aesthia {
namespace {

void RequireNonEmpty(const Histogram& h, const char* what) {
  if (h.total == 0) {
    throw ParameterError(std::string(what) + " of an empty histogram");
  }
}

int MeasureIndex(std::string_view name) {
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i) {
    if (kMeasureNames[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double CompressionRatio(std::span<const std::uint8_t> bytes) {
  return static_cast<double>(LzwEncode(bytes).size()) /
         static_cast<double>(bytes.size());
}

std::uint8_t ToneByte(Tone t) {
  switch (t) {
    case Tone::kWhite:
      return 255;
    case Tone::kGrey:
      return 128;
    case Tone::kBlack:
      return 0;
  }
  return 0;
}

}  // namespace

void MeasureConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError(msg); };
  if (r_adapt < 1) fail("r_adapt must be >= 1");
  if (r_cg < 1) fail("r_cg must be >= 1");
  if (!(delta >= 0.0 && delta <= 0.5)) fail("delta must be in [0, 0.5]");
  if (!(jpeg_quality > 0.0 && jpeg_quality <= 1.0)) {
    fail("jpeg_quality must be in (0, 1]");
  }
  if (!std::isfinite(peak)) fail("peak must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be > 0");
  if (box_min < 2) fail("box_min must be >= 2");
  if (!(box_max_frac > 0.0 && box_max_frac <= 1.0)) {
    fail("box_max_frac must be in (0, 1]");
  }
}

int MeasureConfig::JpegQualityPercent() const {
  return std::clamp(static_cast<int>(std::lround(jpeg_quality * 100.0)), 1,
                    100);
}

MeasureSelection MeasureSelection::All() {
  MeasureSelection s;
  s.on_.fill(true);
  return s;
}

MeasureSelection MeasureSelection::Parse(std::string_view list) {
  MeasureSelection s;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view name = list.substr(start, end - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) {
      const int idx = MeasureIndex(name);
      if (idx < 0) {
        throw ParameterError("unknown measure '" + std::string(name) + "'");
      }
      s.on_[idx] = true;
    }
    start = end + 1;
  }
  return s;
}

bool MeasureSelection::Has(std::string_view name) const {
  const int idx = MeasureIndex(name);
  return idx >= 0 && on_[idx];
}

std::vector<std::string_view> MeasureSelection::Names() const {
  std::vector<std::string_view> names;
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i) {
    if (on_[i]) names.push_back(kMeasureNames[i]);
  }
  return names;
}

std::optional<double> MeasureVector::Get(std::string_view name) const {
  auto as_double = [](const std::optional<std::int64_t>& v) {
    return v ? std::optional<double>(static_cast<double>(*v)) : std::nullopt;
  };
  switch (MeasureIndex(name)) {
    case 0: return entropy;
    case 1: return energy;
    case 2: return as_double(contours);
    case 3: return as_double(euler);
    case 4: return algorithmic;
    case 5: return structural;
    case 6: return machado_cardoso;
    case 7: return machado_cardoso_edge;
    case 8: return fractal_dimension;
    case 9: return fractal_aesthetic;
    case 10: return skew;
    default: return std::nullopt;
  }
}

double Entropy(const Histogram& h) {
  RequireNonEmpty(h, "entropy");
  const double total = static_cast<double>(h.total);
  double s = 0;
  for (std::uint64_t count : h.bins) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    s -= p * std::log(p);
  }
  return s;
}

double Energy(const Histogram& h) {
  RequireNonEmpty(h, "energy");
  const double total = static_cast<double>(h.total);
  double e = 0;
  for (std::uint64_t count : h.bins) {
    const double p = static_cast<double>(count) / total;
    e += p * p;
  }
  return e;
}

double Skewness(const Histogram& h) {
  if (h.total < 2) throw ParameterError("skewness needs at least 2 pixels");
  const double n = static_cast<double>(h.total);
  double mean = 0;
  for (int k = 0; k < 256; ++k) mean += k * static_cast<double>(h.bins[k]);
  mean /= n;
  double m2 = 0;
  double m3 = 0;
  for (int k = 0; k < 256; ++k) {
    if (h.bins[k] == 0) continue;
    const double d = k - mean;
    m2 += d * d * static_cast<double>(h.bins[k]);
    m3 += d * d * d * static_cast<double>(h.bins[k]);
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0) throw DomainError("skewness undefined for zero variance");
  return m3 / std::pow(m2, 1.5);
}

std::int64_t Contours(const GrayImage& img) {
  return AnalyzeTopology(OtsuBinarize(img)).BoundaryCount();
}

std::int64_t EulerNumber(const GrayImage& img) {
  return AnalyzeTopology(OtsuBinarize(img)).EulerNumber();
}

double AlgorithmicComplexity(const GrayImage& img) {
  return CompressionRatio(img.pixels());
}

double StructuralComplexity(const GrayImage& img, const MeasureConfig& cfg) {
  const TernaryImage coarse = CoarseGrain(img, cfg.r_cg, cfg.delta);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(coarse.size());
  for (Tone t : coarse.pixels()) bytes.push_back(ToneByte(t));
  return CompressionRatio(bytes);
}

double MachadoCardoso(const GrayImage& img, const MeasureConfig& cfg,
                      EdgeFilter filter) {
  const GrayImage source =
      filter == EdgeFilter::kSobel ? SobelMagnitude(img) : img;
  const std::vector<std::uint8_t> encoded =
      EncodeJpegGray(source, cfg.JpegQualityPercent());
  const GrayImage decoded = DecodeJpeg(encoded);
  if (decoded.width() != source.width() || decoded.height() != source.height()) {
    throw EncodingError("jpeg round trip changed the image size");
  }
  auto a = source.pixels();
  auto b = decoded.pixels();
  double sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (static_cast<double>(a[i]) - b[i]) / 255.0;
    sq += d * d;
  }
  const double rms = std::sqrt(sq / static_cast<double>(a.size()));
  return rms * static_cast<double>(encoded.size()) /
         static_cast<double>(source.size());
}

std::vector<BoxCount> BoxCounts(const BinaryImage& bin,
                                const MeasureConfig& cfg) {
  if (CountForeground(bin) == 0) {
    throw DomainError("box counting undefined for an image without foreground");
  }
  const double largest =
      cfg.box_max_frac * std::min(bin.width(), bin.height());
  std::vector<BoxCount> counts;
  for (int size = cfg.box_min; size <= largest; size *= 2) {
    const int cols = (bin.width() + size - 1) / size;
    const int rows = (bin.height() + size - 1) / size;
    std::vector<char> occupied(static_cast<std::size_t>(cols) * rows, 0);
    for (int y = 0; y < bin.height(); ++y) {
      for (int x = 0; x < bin.width(); ++x) {
        if (bin.at(x, y)) {
          occupied[static_cast<std::size_t>(y / size) * cols + x / size] = 1;
        }
      }
    }
    counts.push_back(
        {size, std::count(occupied.begin(), occupied.end(), char{1})});
  }
  return counts;
}

double BoxCountingDimension(const BinaryImage& bin, const MeasureConfig& cfg) {
  const double largest =
      cfg.box_max_frac * std::min(bin.width(), bin.height());
  int sizes = 0;
  for (int size = cfg.box_min; size <= largest; size *= 2) ++sizes;
  if (sizes < 3) {
    throw ParameterError("image too small for box counting: " +
                         std::to_string(sizes) + " box sizes, need 3");
  }
  const std::vector<BoxCount> counts = BoxCounts(bin, cfg);
  const double n = static_cast<double>(counts.size());
  double mx = 0;
  double my = 0;
  for (const BoxCount& c : counts) {
    mx += std::log(static_cast<double>(c.size));
    my += std::log(static_cast<double>(c.occupied));
  }
  mx /= n;
  my /= n;
  double sxy = 0;
  double sxx = 0;
  for (const BoxCount& c : counts) {
    const double dx = std::log(static_cast<double>(c.size)) - mx;
    sxy += dx * (std::log(static_cast<double>(c.occupied)) - my);
    sxx += dx * dx;
  }
  return std::clamp(-sxy / sxx, 0.0, 2.0);
}

double FractalDimension(const GrayImage& img, const MeasureConfig& cfg) {
  return BoxCountingDimension(AdaptiveBinarize(img, cfg.r_adapt), cfg);
}

double FractalAesthetic(double dimension, const MeasureConfig& cfg) {
  if (!(cfg.sigma > 0)) throw ParameterError("sigma must be > 0");
  const double d = dimension - cfg.peak;
  return std::exp(-(d * d) / (2.0 * cfg.sigma * cfg.sigma));
}

MeasureVector MeasureAll(const GrayImage& img, const MeasureConfig& cfg,
                         const MeasureSelection& selection) {
  cfg.Validate();
  MeasureVector v;
  auto attempt = [&](std::string_view name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      v.failures.emplace_back(std::string(name), e.what());
    }
  };
  const Histogram hist = LuminanceHistogram(img);

  if (selection.Has("S")) attempt("S", [&] { v.entropy = Entropy(hist); });
  if (selection.Has("E")) attempt("E", [&] { v.energy = Energy(hist); });
  if (selection.Has("T") || selection.Has("gamma")) {
    attempt(selection.Has("T") ? "T" : "gamma", [&] {
      const Topology t = AnalyzeTopology(OtsuBinarize(img));
      if (selection.Has("T")) v.contours = t.BoundaryCount();
      if (selection.Has("gamma")) v.euler = t.EulerNumber();
    });
  }
  if (selection.Has("C_a")) {
    attempt("C_a", [&] { v.algorithmic = AlgorithmicComplexity(img); });
  }
  if (selection.Has("C_s")) {
    attempt("C_s", [&] { v.structural = StructuralComplexity(img, cfg); });
  }
  if (selection.Has("C_mc")) {
    attempt("C_mc", [&] {
      v.machado_cardoso = MachadoCardoso(img, cfg, EdgeFilter::kNone);
    });
  }
  if (selection.Has("C_mc_E")) {
    attempt("C_mc_E", [&] {
      v.machado_cardoso_edge = MachadoCardoso(img, cfg, EdgeFilter::kSobel);
    });
  }
  if (selection.Has("D") || selection.Has("D_a")) {
    std::optional<double> dimension;
    attempt("D", [&] { dimension = FractalDimension(img, cfg); });
    if (selection.Has("D")) v.fractal_dimension = dimension;
    if (selection.Has("D_a")) {
      if (dimension) {
        v.fractal_aesthetic = FractalAesthetic(*dimension, cfg);
      } else {
        v.failures.emplace_back("D_a", "fractal dimension unavailable");
      }
    }
  }
  if (selection.Has("S_k")) attempt("S_k", [&] { v.skew = Skewness(hist); });
  return v;
}

}  // namespace aesthia
