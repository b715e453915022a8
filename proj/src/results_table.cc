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

#include "aesthia/results_table.h"

#include <algorithm>

#include "aesthia/error.h"

namespace aesthia {

void ResultsTable::AddColumn(const std::string& name) {
  if (HasColumn(name)) throw ParameterError("duplicate column '" + name + "'");
  columns_.push_back(name);
  cells_.emplace_back(ids_.size());
}

std::size_t ResultsTable::AddRow(const std::string& id) {
  if (row_index_.contains(id)) {
    throw ParameterError("duplicate row id '" + id + "'");
  }
  row_index_.emplace(id, ids_.size());
  ids_.push_back(id);
  for (auto& column : cells_) column.emplace_back();
  return ids_.size() - 1;
}

void ResultsTable::Set(std::size_t row, const std::string& column, Cell value) {
  cells_[ColumnIndex(column)].at(row) = value;
}

ResultsTable::Cell ResultsTable::Get(std::size_t row,
                                     const std::string& column) const {
  return cells_[ColumnIndex(column)].at(row);
}

bool ResultsTable::HasColumn(const std::string& name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::span<const ResultsTable::Cell> ResultsTable::Column(
    const std::string& name) const {
  return cells_[ColumnIndex(name)];
}

std::size_t ResultsTable::ColumnIndex(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) {
    throw ParameterError("no column named '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns_.begin());
}

}  // namespace aesthia
