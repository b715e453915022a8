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

// Thin RAII wrapper over libjpeg for single-channel baseline JPEG.

#ifndef AESTHIA_JPEG_CODEC_H_
#define AESTHIA_JPEG_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "aesthia/image.h"

namespace aesthia {

// Baseline grayscale JPEG at `quality` on the 1..100 scale, standard
// luminance tables scaled by libjpeg. Throws EncodingError.
std::vector<std::uint8_t> EncodeJpegGray(const GrayImage& img, int quality);

// Decodes any baseline JPEG; colour streams are reduced with BT.601.
// Throws FormatError for corrupt input.
GrayImage DecodeJpeg(std::span<const std::uint8_t> bytes);

}  // namespace aesthia

#endif  // AESTHIA_JPEG_CODEC_H_
