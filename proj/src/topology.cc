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

#include "aesthia/topology.h"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace aesthia {
namespace {

class DisjointSets {
 public:
  int Make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int Find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
};

// Two-pass raster labelling of pixels equal to `value`. Returns a label per
// pixel (-1 for other pixels) in the union-find `sets`.
std::vector<int> Label(const BinaryImage& img, std::uint8_t value,
                       bool eight_connected, DisjointSets& sets) {
  const int w = img.width();
  const int h = img.height();
  std::vector<int> labels(img.size(), -1);
  auto at = [&](int x, int y) -> int& {
    return labels[static_cast<std::size_t>(y) * w + x];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (img.at(x, y) != value) continue;
      int label = -1;
      auto join = [&](int nx, int ny) {
        if (nx < 0 || nx >= w || ny < 0) return;
        const int other = at(nx, ny);
        if (other < 0) return;
        if (label < 0) {
          label = other;
        } else {
          sets.Union(label, other);
        }
      };
      join(x - 1, y);
      join(x, y - 1);
      if (eight_connected) {
        join(x - 1, y - 1);
        join(x + 1, y - 1);
      }
      at(x, y) = label >= 0 ? label : sets.Make();
    }
  }
  return labels;
}

}  // namespace

Topology AnalyzeTopology(const BinaryImage& img) {
  Topology t;
  {
    DisjointSets sets;
    Label(img, 1, /*eight_connected=*/true, sets);
    for (int i = 0; i < sets.size(); ++i) t.components += sets.Find(i) == i;
  }
  {
    DisjointSets sets;
    const std::vector<int> labels =
        Label(img, 0, /*eight_connected=*/false, sets);
    std::vector<char> touches_border(sets.size(), 0);
    const int w = img.width();
    const int h = img.height();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (x != 0 && y != 0 && x != w - 1 && y != h - 1) continue;
        const int l = labels[static_cast<std::size_t>(y) * w + x];
        if (l >= 0) touches_border[sets.Find(l)] = 1;
      }
    }
    for (int i = 0; i < sets.size(); ++i) {
      if (sets.Find(i) == i && !touches_border[i]) ++t.holes;
    }
  }
  return t;
}

}  // namespace aesthia
