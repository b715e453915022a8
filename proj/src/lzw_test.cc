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

#include <bit>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "aesthia/error.h"
#include "gtest/gtest.h"

namespace aesthia {
namespace {

// Straightforward string-keyed encoder for the same stream layout.
std::vector<std::uint8_t> ReferenceEncode(const std::vector<std::uint8_t>& in) {
  std::vector<std::uint8_t> out;
  std::uint64_t acc = 0;
  int bits = 0;
  int position = 0;
  auto put = [&](int code) {
    const int width =
        std::min(12, static_cast<int>(std::bit_width(257u + position)));
    acc |= static_cast<std::uint64_t>(code) << bits;
    bits += width;
    while (bits >= 8) {
      out.push_back(static_cast<std::uint8_t>(acc));
      acc >>= 8;
      bits -= 8;
    }
  };
  std::map<std::string, int> dict;
  int next = 258;
  auto code_of = [&](const std::string& s) {
    return s.size() == 1 ? static_cast<unsigned char>(s[0]) : dict.at(s);
  };
  put(256);
  std::string w(1, static_cast<char>(in[0]));
  for (std::size_t i = 1; i < in.size(); ++i) {
    const std::string wc = w + static_cast<char>(in[i]);
    if (dict.contains(wc)) {
      w = wc;
      continue;
    }
    put(code_of(w));
    ++position;
    dict[wc] = next++;
    if (next == 4096) {
      put(256);
      dict.clear();
      next = 258;
      position = 0;
    }
    w = std::string(1, static_cast<char>(in[i]));
  }
  put(code_of(w));
  ++position;
  put(257);
  if (bits > 0) out.push_back(static_cast<std::uint8_t>(acc));
  return out;
}

// Packs 9-bit codes LSB-first.
std::vector<std::uint8_t> Pack9(const std::vector<int>& codes) {
  std::vector<std::uint8_t> out;
  std::uint32_t acc = 0;
  int bits = 0;
  for (int c : codes) {
    acc |= static_cast<std::uint32_t>(c) << bits;
    bits += 9;
    while (bits >= 8) {
      out.push_back(static_cast<std::uint8_t>(acc));
      acc >>= 8;
      bits -= 8;
    }
  }
  if (bits > 0) out.push_back(static_cast<std::uint8_t>(acc));
  return out;
}

std::vector<std::uint8_t> Bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

TEST(LzwTest, HandComputedCodeSequence) {
  // ABABABA: A, B, AB(258), ABA(260).
  EXPECT_EQ(LzwEncode(Bytes("ABABABA")), Pack9({256, 65, 66, 258, 260, 257}));
}

TEST(LzwTest, DecodesCodeDefinedByItsOwnUse) {
  // AAAA: A, AA(258) referenced right as it is being defined.
  const auto stream = Pack9({256, 65, 258, 65, 257});
  EXPECT_EQ(LzwEncode(Bytes("AAAA")), stream);
  EXPECT_EQ(LzwDecode(stream), Bytes("AAAA"));
}

TEST(LzwTest, MatchesReferenceEncoderAcrossResets) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int alphabet = trial % 2 ? 256 : 4;
    std::uniform_int_distribution<int> byte(0, alphabet - 1);
    std::vector<std::uint8_t> in(trial * 1500 + 1);
    for (auto& b : in) b = static_cast<std::uint8_t>(byte(rng));
    EXPECT_EQ(LzwEncode(in), ReferenceEncode(in)) << "trial " << trial;
  }
}

TEST(LzwTest, RoundTripsRandomStrings) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> length(1, 3000);
  for (int trial = 0; trial < 1000; ++trial) {
    const int alphabet = 1 + trial % 256;
    std::uniform_int_distribution<int> byte(0, alphabet - 1);
    std::vector<std::uint8_t> in(length(rng));
    for (auto& b : in) b = static_cast<std::uint8_t>(byte(rng));
    ASSERT_EQ(LzwDecode(LzwEncode(in)), in) << "trial " << trial;
  }
}

TEST(LzwTest, RoundTripsLongInputsWithManyResets) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> in(200000);
  for (auto& b : in) b = static_cast<std::uint8_t>(byte(rng));
  EXPECT_EQ(LzwDecode(LzwEncode(in)), in);
  const std::vector<std::uint8_t> flat(300000, 9);
  EXPECT_EQ(LzwDecode(LzwEncode(flat)), flat);
}

TEST(LzwTest, RejectsEmptyInput) {
  EXPECT_THROW(LzwEncode(std::vector<std::uint8_t>{}), ParameterError);
}

TEST(LzwTest, RejectsMalformedStreams) {
  EXPECT_THROW(LzwDecode(std::vector<std::uint8_t>{}), FormatError);
  EXPECT_THROW(LzwDecode(Pack9({65, 257})), FormatError);
  EXPECT_THROW(LzwDecode(Pack9({256, 65, 300, 257})), FormatError);
  EXPECT_THROW(LzwDecode(Pack9({256, 258, 257})), FormatError);
  auto truncated = LzwEncode(Bytes("hello hello hello"));
  truncated.pop_back();
  truncated.pop_back();
  EXPECT_THROW(LzwDecode(truncated), FormatError);
}

}  // namespace
}  // namespace aesthia
