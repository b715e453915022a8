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

// Minimal RFC 4180 reader/writer helpers.

#ifndef AESTHIA_CSV_H_
#define AESTHIA_CSV_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace aesthia {

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Quoted fields may contain commas, doubled quotes and newlines. Throws
  // FormatError on an unterminated quote.
  bool Next(std::vector<std::string>& fields);

  // 1-based physical line on which the last record started.
  int line() const { return record_line_; }

 private:
  std::istream& in_;
  int line_ = 0;
  int record_line_ = 0;
};

// Quotes a field only when it contains a comma, quote or line break.
std::string CsvField(std::string_view value);

// "%.9g", or empty for NaN.
std::string FormatNumber(double value);

}  // namespace aesthia

#endif  // AESTHIA_CSV_H_
