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

// Variable-width LZW in the GIF style.
//
// Stream layout: codes are packed LSB-first into bytes, the last byte padded
// with zero bits. Literals are 0..255, CLEAR = 256, END = 257, dictionary
// entries start at 258. The stream opens with CLEAR. The n-th code after a
// CLEAR (n = 0, 1, ...) is written with min(12, bit_width(257 + n)) bits,
// which is exactly wide enough for every code the dictionary can hold at
// that point. When the 4096-entry table fills, CLEAR is emitted and both
// sides start over at 9 bits. The stream closes with END.

#ifndef AESTHIA_LZW_H_
#define AESTHIA_LZW_H_

#include <cstdint>
#include <span>
#include <vector>

namespace aesthia {

inline constexpr int kLzwClear = 256;
inline constexpr int kLzwEnd = 257;
inline constexpr int kLzwMaxBits = 12;

// Throws ParameterError on empty input.
std::vector<std::uint8_t> LzwEncode(std::span<const std::uint8_t> input);

// Throws FormatError if the stream is not a valid encoding.
std::vector<std::uint8_t> LzwDecode(std::span<const std::uint8_t> stream);

}  // namespace aesthia

#endif  // AESTHIA_LZW_H_
