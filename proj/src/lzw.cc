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

#include "aesthia/lzw.h"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "aesthia/error.h"

namespace aesthia {
namespace {

constexpr int kFirstEntry = 258;
constexpr int kTableSize = 1 << kLzwMaxBits;

int CodeWidth(int position) {
  return std::min(kLzwMaxBits,
                  static_cast<int>(std::bit_width(
                      static_cast<unsigned>(kLzwClear + 1 + position))));
}

class BitWriter {
 public:
  void Put(int code, int width) {
    acc_ |= static_cast<std::uint32_t>(code) << bits_;
    bits_ += width;
    while (bits_ >= 8) {
      out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      bits_ -= 8;
    }
  }
  std::vector<std::uint8_t> Finish() {
    if (bits_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
    acc_ = 0;
    bits_ = 0;
    return std::move(out_);
  }

 private:
  std::vector<std::uint8_t> out_;
  std::uint32_t acc_ = 0;
  int bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}
  // Returns -1 once the stream cannot supply `width` more bits.
  int Get(int width) {
    while (bits_ < width) {
      if (pos_ >= in_.size()) return -1;
      acc_ |= static_cast<std::uint32_t>(in_[pos_++]) << bits_;
      bits_ += 8;
    }
    const int code = static_cast<int>(acc_ & ((1u << width) - 1));
    acc_ >>= width;
    bits_ -= width;
    return code;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t acc_ = 0;
  int bits_ = 0;
};

// (prefix code, next byte) -> entry code; 0 marks an empty slot since no
// entry can have code 0. Only touched slots are reset on CLEAR.
class EncoderTable {
 public:
  EncoderTable() : slots_(static_cast<std::size_t>(kTableSize) * 256, 0) {
    touched_.reserve(kTableSize);
  }
  std::uint16_t Find(int prefix, std::uint8_t c) const {
    return slots_[Key(prefix, c)];
  }
  void Add(int prefix, std::uint8_t c, int code) {
    const std::size_t k = Key(prefix, c);
    slots_[k] = static_cast<std::uint16_t>(code);
    touched_.push_back(k);
  }
  void Clear() {
    for (std::size_t k : touched_) slots_[k] = 0;
    touched_.clear();
  }

 private:
  static std::size_t Key(int prefix, std::uint8_t c) {
    return static_cast<std::size_t>(prefix) * 256 + c;
  }
  std::vector<std::uint16_t> slots_;
  std::vector<std::size_t> touched_;
};

}  // namespace

std::vector<std::uint8_t> LzwEncode(std::span<const std::uint8_t> input) {
  if (input.empty()) throw ParameterError("LZW input must be non-empty");
  EncoderTable table;
  BitWriter out;
  int position = 0;
  int next = kFirstEntry;
  out.Put(kLzwClear, CodeWidth(position));

  int w = input[0];
  for (std::size_t i = 1; i < input.size(); ++i) {
    const std::uint8_t c = input[i];
    if (const std::uint16_t hit = table.Find(w, c); hit != 0) {
      w = hit;
      continue;
    }
    out.Put(w, CodeWidth(position++));
    table.Add(w, c, next++);
    if (next == kTableSize) {
      out.Put(kLzwClear, CodeWidth(position));
      table.Clear();
      position = 0;
      next = kFirstEntry;
    }
    w = c;
  }
  out.Put(w, CodeWidth(position++));
  out.Put(kLzwEnd, CodeWidth(position));
  return out.Finish();
}

std::vector<std::uint8_t> LzwDecode(std::span<const std::uint8_t> stream) {
  std::array<std::uint16_t, kTableSize> prefix{};
  std::array<std::uint8_t, kTableSize> suffix{};
  std::array<std::uint8_t, kTableSize> first{};
  for (int i = 0; i < 256; ++i) {
    suffix[i] = static_cast<std::uint8_t>(i);
    first[i] = static_cast<std::uint8_t>(i);
  }

  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> scratch;
  auto emit = [&](int code) {
    scratch.clear();
    while (code >= kFirstEntry) {
      scratch.push_back(suffix[code]);
      code = prefix[code];
    }
    scratch.push_back(static_cast<std::uint8_t>(code));
    out.insert(out.end(), scratch.rbegin(), scratch.rend());
  };

  BitReader in(stream);
  int position = 0;
  int next = kFirstEntry;
  int prev = -1;
  bool started = false;
  for (;;) {
    const int code = in.Get(CodeWidth(position));
    if (code < 0) throw FormatError("LZW stream truncated before END code");
    if (code == kLzwClear) {
      started = true;
      position = 0;
      next = kFirstEntry;
      prev = -1;
      continue;
    }
    if (!started) throw FormatError("LZW stream does not open with CLEAR");
    if (code == kLzwEnd) break;
    ++position;
    if (prev < 0) {
      if (code > 255) {
        throw FormatError("LZW code " + std::to_string(code) +
                          " cannot follow CLEAR");
      }
      emit(code);
      prev = code;
      continue;
    }
    if (next >= kTableSize) {
      throw FormatError("LZW dictionary overflow without CLEAR");
    }
    std::uint8_t head;
    if (code < next) {
      head = first[code];
      emit(code);
    } else if (code == next) {
      head = first[prev];
      emit(prev);
      out.push_back(head);
    } else {
      throw FormatError("LZW code " + std::to_string(code) +
                        " is not yet defined");
    }
    prefix[next] = static_cast<std::uint16_t>(prev);
    suffix[next] = head;
    first[next] = first[prev];
    ++next;
    prev = code;
  }
  return out;
}

}  // namespace aesthia
