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

#include "aesthia/image.h"

#include <algorithm>

namespace aesthia {

Histogram LuminanceHistogram(const GrayImage& img) {
  Histogram h;
  for (std::uint8_t v : img.pixels()) ++h.bins[v];
  h.total = img.size();
  return h;
}

std::size_t CountForeground(const BinaryImage& img) {
  auto px = img.pixels();
  return static_cast<std::size_t>(std::count(px.begin(), px.end(), 1));
}

}  // namespace aesthia
