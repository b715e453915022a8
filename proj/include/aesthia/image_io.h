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

#ifndef AESTHIA_IMAGE_IO_H_
#define AESTHIA_IMAGE_IO_H_

#include <cstdint>
#include <span>
#include <string>

#include "aesthia/image.h"

namespace aesthia {

// Decodes a PNG or baseline JPEG file to 8-bit luminance. Colour inputs are
// reduced with BT.601 weights and rounded; 16-bit PNG samples are shifted
// right by 8. Alpha is ignored.
//
// Throws IoError if the file is missing or unreadable and FormatError if the
// bytes are not a decodable PNG/JPEG. Both messages carry the path.
GrayImage LoadImage(const std::string& path);

// Same as LoadImage for an in-memory buffer; `name` is only used in messages.
GrayImage DecodeImage(std::span<const std::uint8_t> bytes,
                      const std::string& name);

// BT.601 luma, rounded to nearest.
std::uint8_t Bt601Luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Writes 8-bit interleaved samples (1 = gray, 3 = RGB, 4 = RGBA) as PNG.
void WritePng(const std::string& path, int width, int height, int channels,
              std::span<const std::uint8_t> samples);
void WritePng(const std::string& path, const GrayImage& img);

}  // namespace aesthia

#endif  // AESTHIA_IMAGE_IO_H_
