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

#include "aesthia/jpeg_codec.h"

#include <jpeglib.h>

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "aesthia/image_io.h"

namespace aesthia {
namespace {

struct ErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void OnError(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<ErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Silences libjpeg's warnings on stderr.
void OnMessage(j_common_ptr, int) {}

class Compressor {
 public:
  Compressor() {
    info_.err = jpeg_std_error(&err_.pub);
    err_.pub.error_exit = OnError;
    err_.pub.emit_message = OnMessage;
    jpeg_create_compress(&info_);
  }
  ~Compressor() {
    jpeg_destroy_compress(&info_);
    std::free(buffer_);
  }
  Compressor(const Compressor&) = delete;
  Compressor& operator=(const Compressor&) = delete;

  jpeg_compress_struct info_;
  ErrorManager err_;
  unsigned char* buffer_ = nullptr;
  unsigned long buffer_size_ = 0;
};

class Decompressor {
 public:
  Decompressor() {
    info_.err = jpeg_std_error(&err_.pub);
    err_.pub.error_exit = OnError;
    err_.pub.emit_message = OnMessage;
    jpeg_create_decompress(&info_);
  }
  ~Decompressor() { jpeg_destroy_decompress(&info_); }
  Decompressor(const Decompressor&) = delete;
  Decompressor& operator=(const Decompressor&) = delete;

  jpeg_decompress_struct info_;
  ErrorManager err_;
};

// The setjmp frames below hold only trivially destructible locals so a
// longjmp out of libjpeg skips no destructors.
bool RunCompress(Compressor& c, const GrayImage& img, int quality) {
  if (setjmp(c.err_.jump)) return false;
  jpeg_mem_dest(&c.info_, &c.buffer_, &c.buffer_size_);
  c.info_.image_width = static_cast<JDIMENSION>(img.width());
  c.info_.image_height = static_cast<JDIMENSION>(img.height());
  c.info_.input_components = 1;
  c.info_.in_color_space = JCS_GRAYSCALE;
  jpeg_set_defaults(&c.info_);
  jpeg_set_quality(&c.info_, quality, TRUE);
  c.info_.dct_method = JDCT_ISLOW;
  jpeg_start_compress(&c.info_, TRUE);
  const std::uint8_t* base = img.pixels().data();
  while (c.info_.next_scanline < c.info_.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(
        base + static_cast<std::size_t>(c.info_.next_scanline) * img.width());
    jpeg_write_scanlines(&c.info_, &row, 1);
  }
  jpeg_finish_compress(&c.info_);
  return true;
}

bool RunDecompress(Decompressor& d, std::span<const std::uint8_t> bytes,
                   std::vector<std::uint8_t>& samples, int& width, int& height,
                   int& channels) {
  if (setjmp(d.err_.jump)) return false;
  jpeg_mem_src(&d.info_, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&d.info_, TRUE);
  d.info_.out_color_space =
      d.info_.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  d.info_.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&d.info_);
  width = static_cast<int>(d.info_.output_width);
  height = static_cast<int>(d.info_.output_height);
  channels = d.info_.output_components;
  samples.resize(static_cast<std::size_t>(width) * height * channels);
  while (d.info_.output_scanline < d.info_.output_height) {
    JSAMPROW row = samples.data() + static_cast<std::size_t>(
                                        d.info_.output_scanline) *
                                        width * channels;
    jpeg_read_scanlines(&d.info_, &row, 1);
  }
  jpeg_finish_decompress(&d.info_);
  return true;
}

}  // namespace

std::vector<std::uint8_t> EncodeJpegGray(const GrayImage& img, int quality) {
  if (quality < 1 || quality > 100) {
    throw ParameterError("jpeg quality must be in [1, 100], got " +
                         std::to_string(quality));
  }
  Compressor c;
  if (!RunCompress(c, img, quality)) {
    throw EncodingError(std::string("jpeg encode failed: ") + c.err_.message);
  }
  return std::vector<std::uint8_t>(c.buffer_, c.buffer_ + c.buffer_size_);
}

GrayImage DecodeJpeg(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw FormatError("jpeg decode failed: empty input");
  Decompressor d;
  std::vector<std::uint8_t> samples;
  int width = 0;
  int height = 0;
  int channels = 0;
  if (!RunDecompress(d, bytes, samples, width, height, channels)) {
    throw FormatError(std::string("jpeg decode failed: ") + d.err_.message);
  }
  if (channels == 1) return GrayImage(width, height, std::move(samples));
  std::vector<std::uint8_t> luma(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < luma.size(); ++i) {
    luma[i] = Bt601Luma(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
  }
  return GrayImage(width, height, std::move(luma));
}

}  // namespace aesthia
