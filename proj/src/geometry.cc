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

#include "aesthia/geometry.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "aesthia/error.h"
#include "json.hpp"

namespace aesthia {
namespace {

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int Sign(double v) { return (v > 0) - (v < 0); }

bool OnSegment(const Point2& p, const Point2& a, const Point2& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed segments [a,b] and [c,d] share at least one point.
bool SegmentsTouch(const Point2& a, const Point2& b, const Point2& c,
                   const Point2& d) {
  const int d1 = Sign(Cross(c, d, a));
  const int d2 = Sign(Cross(c, d, b));
  const int d3 = Sign(Cross(a, b, c));
  const int d4 = Sign(Cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && OnSegment(a, c, d)) || (d2 == 0 && OnSegment(b, c, d)) ||
         (d3 == 0 && OnSegment(c, a, b)) || (d4 == 0 && OnSegment(d, a, b));
}

}  // namespace

double SignedArea(std::span<const Point2> ring) {
  double twice = 0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point2& p = ring[i];
    const Point2& q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / 2;
}

std::vector<Point2> ConvexHull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

LayerPolygon::LayerPolygon(std::vector<Point2> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() > 1 && vertices_.front() == vertices_.back()) {
    vertices_.pop_back();
  }
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw ParameterError("polygon needs at least 3 vertices, got " +
                         std::to_string(n));
  }
  for (const Point2& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DomainError("polygon has a non-finite coordinate");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices_[i] == vertices_[(i + 1) % n]) {
      throw DomainError("polygon repeats vertex " + std::to_string(i));
    }
  }
  double min_x = vertices_[0].x, max_x = min_x;
  double min_y = vertices_[0].y, max_y = min_y;
  for (const Point2& p : vertices_) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double area = SignedArea(vertices_);
  if (std::abs(area) <= 1e-12 * extent * extent) {
    throw DomainError("degenerate polygon: zero area");
  }
  // Non-adjacent edges must be disjoint; adjacent edges may only share
  // their common vertex.
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2& c = vertices_[j];
      const Point2& d = vertices_[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        const Point2& shared = j == i + 1 ? b : a;
        const Point2& far_self = j == i + 1 ? a : b;
        const Point2& far_other = j == i + 1 ? d : c;
        if (Cross(shared, far_self, far_other) == 0 &&
            ((far_self.x - shared.x) * (far_other.x - shared.x) +
             (far_self.y - shared.y) * (far_other.y - shared.y)) > 0) {
          throw DomainError("polygon folds back on itself at vertex " +
                            std::to_string(j == i + 1 ? j : i));
        }
        continue;
      }
      if (SegmentsTouch(a, b, c, d)) {
        throw DomainError("polygon self-intersects (edges " +
                          std::to_string(i) + " and " + std::to_string(j) +
                          ")");
      }
    }
  }
  if (area < 0) std::reverse(vertices_.begin(), vertices_.end());
}

double LayerPolygon::Area() const { return SignedArea(vertices_); }

LayeredForm::LayeredForm(std::vector<Layer> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw FormatError("form has no layers");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].polygons.empty()) {
      throw FormatError("layer " + std::to_string(i) + ": no polygons");
    }
    if (i > 0 && layers_[i].z <= layers_[i - 1].z) {
      throw FormatError("layer " + std::to_string(i) +
                        ": z index must strictly increase");
    }
  }
}

double ConvexityDeviation(const LayerPolygon& poly) {
  const std::vector<Point2> hull = ConvexHull(poly.vertices());
  const double hull_area = SignedArea(hull);
  if (!(hull_area > 0)) throw DomainError("degenerate polygon: empty hull");
  return std::clamp(1.0 - poly.Area() / hull_area, 0.0, 1.0);
}

std::vector<double> InteriorAngles(const LayerPolygon& poly) {
  const auto v = poly.vertices();
  const std::size_t n = v.size();
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& prev = v[(i + n - 1) % n];
    const Point2& cur = v[i];
    const Point2& next = v[(i + 1) % n];
    const double ex = next.x - cur.x, ey = next.y - cur.y;
    const double px = prev.x - cur.x, py = prev.y - cur.y;
    // Counter-clockwise sweep from the outgoing to the incoming edge.
    double deg = std::atan2(ex * py - ey * px, ex * px + ey * py) * 180.0 /
                 std::numbers::pi;
    if (deg < 0) deg += 360.0;
    angles[i] = deg;
  }
  return angles;
}

double Quantile(std::vector<double> sample, double p) {
  if (sample.empty()) throw ParameterError("quantile of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double h = (static_cast<double>(sample.size()) - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

double AngleDispersion(const LayerPolygon& poly) {
  const std::vector<double> angles = InteriorAngles(poly);
  if (angles.size() < 3) {
    throw ParameterError("angle dispersion needs at least 3 angles");
  }
  const double q1 = Quantile(angles, 0.25);
  const double q3 = Quantile(angles, 0.75);
  return (q3 - q1) / (q3 + q1);
}

double LayerScore(const Layer& layer) {
  if (layer.polygons.empty()) throw ParameterError("layer has no polygons");
  double sum = 0;
  for (const LayerPolygon& poly : layer.polygons) {
    sum += (ConvexityDeviation(poly) + AngleDispersion(poly)) / 2.0;
  }
  return sum / static_cast<double>(layer.polygons.size());
}

double PhysicalComplexity(const LayeredForm& form) {
  double sum = 0;
  for (const Layer& layer : form.layers()) sum += LayerScore(layer);
  return sum / static_cast<double>(form.layers().size());
}

LayeredForm ParseLayeredForm(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("form is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") ||
      !doc["layers"].is_array()) {
    throw FormatError("form must be an object with a \"layers\" array");
  }
  std::vector<Layer> layers;
  const auto& jlayers = doc["layers"];
  for (std::size_t li = 0; li < jlayers.size(); ++li) {
    const std::string where = "layer " + std::to_string(li);
    const auto& jl = jlayers[li];
    if (!jl.is_object() || !jl.contains("z") || !jl["z"].is_number_integer() ||
        !jl.contains("polygons") || !jl["polygons"].is_array()) {
      throw FormatError(where + ": expected {\"z\": int, \"polygons\": [...]}");
    }
    Layer layer;
    layer.z = jl["z"].get<int>();
    const auto& jpolys = jl["polygons"];
    for (std::size_t pi = 0; pi < jpolys.size(); ++pi) {
      const std::string pwhere = where + ", polygon " + std::to_string(pi);
      const auto& jp = jpolys[pi];
      if (!jp.is_array()) throw FormatError(pwhere + ": expected point array");
      std::vector<Point2> pts;
      pts.reserve(jp.size());
      for (const auto& jpt : jp) {
        if (!jpt.is_array() || jpt.size() != 2 || !jpt[0].is_number() ||
            !jpt[1].is_number()) {
          throw FormatError(pwhere + ": points must be [x, y] numbers");
        }
        pts.push_back({jpt[0].get<double>(), jpt[1].get<double>()});
      }
      try {
        layer.polygons.emplace_back(std::move(pts));
      } catch (const Error& e) {
        throw FormatError(pwhere + ": " + e.what());
      }
    }
    layers.push_back(std::move(layer));
  }
  return LayeredForm(std::move(layers));
}

LayeredForm LoadLayeredForm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open form file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return ParseLayeredForm(text.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace aesthia
