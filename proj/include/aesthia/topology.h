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

// Connected-component topology of binary images.

#ifndef AESTHIA_TOPOLOGY_H_
#define AESTHIA_TOPOLOGY_H_

#include "aesthia/image.h"

namespace aesthia {

struct Topology {
  int components = 0;  // 8-connected foreground regions
  int holes = 0;       // 4-connected background regions off the border

  int BoundaryCount() const { return components + holes; }
  int EulerNumber() const { return components - holes; }
};

// Pairs 8-connectivity for foreground with 4-connectivity for background,
// the combination under which every hole is enclosed by exactly one
// component.
Topology AnalyzeTopology(const BinaryImage& img);

}  // namespace aesthia

#endif  // AESTHIA_TOPOLOGY_H_
