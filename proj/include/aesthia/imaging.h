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

// Pre-processing transforms shared by the measures. All functions are pure.

#ifndef AESTHIA_IMAGING_H_
#define AESTHIA_IMAGING_H_

#include "aesthia/image.h"

namespace aesthia {

// Otsu's threshold over the luminance histogram: the t in [1, 255] that
// maximises between-class variance of {v < t} and {v >= t}. The smallest
// maximiser wins. Returns 0 when the image has a single grey level.
int OtsuThreshold(const Histogram& h);

// Foreground (1) is the dark class, v < OtsuThreshold. A constant image
// yields an all-background raster.
BinaryImage OtsuBinarize(const GrayImage& img);

// 1 where a pixel is strictly brighter than the mean of the
// (2r+1)x(2r+1) block centred on it, clipped at the borders.
// Requires 1 <= r < min(width, height).
BinaryImage AdaptiveBinarize(const GrayImage& img, int radius);

// Sobel gradient magnitude on [0,1]-normalised luminance, clamped to 1 and
// re-quantised to [0,255]. Borders use edge replication. Requires a 3x3 image
// or larger.
GrayImage SobelMagnitude(const GrayImage& img);

// Fraction of foreground pixels in every (2r+1)x(2r+1) clipped window, then
// white if eta <= delta, grey if delta < eta <= 1 - delta, black otherwise.
TernaryImage CoarseGrain(const BinaryImage& bin, int radius, double delta);

// OtsuBinarize followed by the binary overload.
TernaryImage CoarseGrain(const GrayImage& img, int radius, double delta);

}  // namespace aesthia

#endif  // AESTHIA_IMAGING_H_
