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

#ifndef AESTHIA_RESULTS_TABLE_H_
#define AESTHIA_RESULTS_TABLE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace aesthia {

// Rows keyed by unique id, named numeric columns, missing cells allowed.
// Column and row order are insertion order.
class ResultsTable {
 public:
  using Cell = std::optional<double>;

  // Throws ParameterError on a duplicate name.
  void AddColumn(const std::string& name);
  // Throws ParameterError on a duplicate id. Returns the row index.
  std::size_t AddRow(const std::string& id);

  void Set(std::size_t row, const std::string& column, Cell value);
  Cell Get(std::size_t row, const std::string& column) const;

  bool HasColumn(const std::string& name) const;
  // Throws ParameterError naming the column if absent.
  std::span<const Cell> Column(const std::string& name) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t rows() const { return ids_.size(); }

  friend bool operator==(const ResultsTable&, const ResultsTable&) = default;

 private:
  std::size_t ColumnIndex(const std::string& name) const;

  std::vector<std::string> columns_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::vector<std::vector<Cell>> cells_;  // per column
};

}  // namespace aesthia

#endif  // AESTHIA_RESULTS_TABLE_H_
