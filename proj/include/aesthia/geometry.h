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

// Physical complexity of layered forms: per-layer convexity deficit and
// quartile dispersion of interior angles, averaged over polygons and layers.

#ifndef AESTHIA_GEOMETRY_H_
#define AESTHIA_GEOMETRY_H_

#include <span>
#include <string>
#include <vector>

namespace aesthia {

struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Positive for counter-clockwise vertex order.
double SignedArea(std::span<const Point2> ring);

// Andrew's monotone chain; counter-clockwise, no collinear points, no
// repeated first point.
std::vector<Point2> ConvexHull(std::span<const Point2> points);

// A simple closed polygon with at least three vertices and non-zero area.
// The closing edge is implicit; a trailing copy of the first vertex is
// dropped on construction. Vertices are stored counter-clockwise.
class LayerPolygon {
 public:
  // Throws ParameterError for fewer than 3 distinct vertices and
  // DomainError for zero area, repeated consecutive vertices or
  // self-intersection.
  explicit LayerPolygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  double Area() const;

 private:
  std::vector<Point2> vertices_;
};

struct Layer {
  int z = 0;
  std::vector<LayerPolygon> polygons;
};

class LayeredForm {
 public:
  // Throws FormatError naming the layer index when the form is empty, a
  // layer has no polygons or z does not strictly increase.
  explicit LayeredForm(std::vector<Layer> layers);

  std::span<const Layer> layers() const { return layers_; }

 private:
  std::vector<Layer> layers_;
};

// 1 - area / hull area, in [0, 1).
double ConvexityDeviation(const LayerPolygon& poly);

// Interior angle in degrees at each vertex, each in (0, 360).
std::vector<double> InteriorAngles(const LayerPolygon& poly);

// Linear-interpolation (type 7) quantile of an unsorted sample.
double Quantile(std::vector<double> sample, double p);

// (Q3 - Q1) / (Q3 + Q1) of the interior angles.
double AngleDispersion(const LayerPolygon& poly);

// Mean over the layer's polygons of (convexity + dispersion) / 2.
double LayerScore(const Layer& layer);

// Mean layer score.
double PhysicalComplexity(const LayeredForm& form);

// {"layers": [{"z": int, "polygons": [[[x, y], ...], ...]}, ...]}
// Throws FormatError with the layer (and polygon) index on any problem.
LayeredForm ParseLayeredForm(const std::string& json_text);
LayeredForm LoadLayeredForm(const std::string& path);

}  // namespace aesthia

#endif  // AESTHIA_GEOMETRY_H_
