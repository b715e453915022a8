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

// Synthetic images with known measure values.

#ifndef AESTHIA_TESTS_FIXTURES_H_
#define AESTHIA_TESTS_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "aesthia/image.h"
#include "test_util.h"

namespace aesthia::testing {

inline constexpr std::uint8_t kInk = 20;
inline constexpr std::uint8_t kPaper = 235;

inline GrayImage DiskImage() {
  GrayImage img(64, 64, kPaper);
  FillDisk(img, 32, 32, 20, kInk);
  return img;
}

inline GrayImage AnnulusImage() {
  GrayImage img(64, 64, kPaper);
  FillDisk(img, 32, 32, 24, kInk);
  FillDisk(img, 32, 32, 10, kPaper);
  return img;
}

// Three separate disks, one of them pierced.
inline GrayImage ThreeDisksOneHoleImage() {
  GrayImage img(128, 64, kPaper);
  FillDisk(img, 20, 32, 14, kInk);
  FillDisk(img, 64, 32, 14, kInk);
  FillDisk(img, 108, 32, 14, kInk);
  FillDisk(img, 64, 32, 5, kPaper);
  return img;
}

// Pascal's triangle mod 2 on a 2^depth grid: (x, y) is set iff x & y == 0.
inline BinaryImage SierpinskiTriangle(int depth) {
  const int n = 1 << depth;
  BinaryImage img(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) img.set(x, y, (x & y) == 0 ? 1 : 0);
  }
  return img;
}

inline BinaryImage FilledSquare(int n) { return BinaryImage(n, n, std::uint8_t{1}); }

inline BinaryImage HorizontalLine(int n) {
  BinaryImage img(n, n);
  for (int x = 0; x < n; ++x) img.set(x, n / 2, 1);
  return img;
}

// `ones` pixels at 255 followed by `zeros` pixels at 0, in one row.
inline GrayImage TwoLevelRow(int zeros, int ones) {
  std::vector<std::uint8_t> px(zeros, 0);
  px.insert(px.end(), ones, 255);
  return GrayImage(zeros + ones, 1, px);
}

}  // namespace aesthia::testing

#endif  // AESTHIA_TESTS_FIXTURES_H_
