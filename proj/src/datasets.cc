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

#include "aesthia/datasets.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "aesthia/csv.h"
#include "aesthia/error.h"

namespace aesthia {
namespace {

std::optional<double> ParseNumber(const std::string& text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw FormatError("not a finite number: '" + text + "'");
  }
  return v;
}

}  // namespace

const ManifestEntry* DatasetManifest::Find(const std::string& id) const {
  for (const ManifestEntry& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

DatasetManifest LoadManifest(const std::filesystem::path& path,
                             std::optional<std::string> name) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const std::string where = path.string();
  DatasetManifest manifest;
  manifest.name = name ? *name : path.stem().string();
  const std::filesystem::path base = path.parent_path();

  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.Next(fields) || fields.size() != 4 || fields[0] != "id" ||
      fields[1] != "path" || fields[2] != "score" || fields[3] != "category") {
    throw FormatError(where + ": header must be id,path,score,category");
  }
  std::unordered_set<std::string> seen;
  while (reader.Next(fields)) {
    const std::string at = where + " line " + std::to_string(reader.line());
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 4) {
      throw FormatError(at + ": expected 4 fields, got " +
                        std::to_string(fields.size()));
    }
    ManifestEntry e;
    e.id = fields[0];
    if (e.id.empty()) throw FormatError(at + ": empty id");
    if (!seen.insert(e.id).second) {
      throw FormatError(at + ": duplicate id '" + e.id + "'");
    }
    std::filesystem::path image = fields[1];
    if (image.is_relative()) image = base / image;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(image, ec)) {
      throw IoError(at + ": image not readable: " + image.string());
    }
    e.path = image.lexically_normal();
    try {
      e.score = ParseNumber(fields[2]);
    } catch (const FormatError& err) {
      throw FormatError(at + ": bad score: " + err.what());
    }
    if (!fields[3].empty()) e.category = fields[3];
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

std::vector<std::string> ResultColumns(const MeasureSelection& selection) {
  std::vector<std::string> cols = {"id"};
  for (std::string_view n : selection.Names()) cols.emplace_back(n);
  cols.emplace_back("score");
  return cols;
}

ResultsTable BuildResultsTable(const DatasetManifest& manifest,
                               const std::vector<MeasureVector>& measures,
                               const MeasureSelection& selection) {
  if (measures.size() != manifest.entries.size()) {
    throw ParameterError("one measure vector per manifest entry required");
  }
  ResultsTable table;
  const auto names = selection.Names();
  for (std::string_view n : names) table.AddColumn(std::string(n));
  table.AddColumn("score");
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const std::size_t row = table.AddRow(manifest.entries[i].id);
    for (std::string_view n : names) {
      table.Set(row, std::string(n), measures[i].Get(n));
    }
    table.Set(row, "score", manifest.entries[i].score);
  }
  return table;
}

std::string FormatResults(const ResultsTable& table) {
  std::ostringstream out;
  out << "id";
  for (const std::string& c : table.columns()) out << ',' << CsvField(c);
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << CsvField(table.ids()[r]);
    for (const std::string& c : table.columns()) {
      out << ',';
      if (const auto v = table.Get(r, c)) out << FormatNumber(*v);
    }
    out << '\n';
  }
  return out.str();
}

void WriteResults(const ResultsTable& table,
                  const std::filesystem::path& path) {
  if (table.rows() == 0) throw ParameterError("refusing to write empty results");
  const std::string text = FormatResults(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write results to " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

ResultsTable ParseResults(std::istream& in, const std::string& name) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.Next(header) || header.empty() || header[0] != "id") {
    throw FormatError(name + ": first column must be 'id'");
  }
  ResultsTable table;
  for (std::size_t i = 1; i < header.size(); ++i) {
    try {
      table.AddColumn(header[i]);
    } catch (const ParameterError& e) {
      throw FormatError(name + ": " + e.what());
    }
  }
  std::vector<std::string> fields;
  while (reader.Next(fields)) {
    const std::string at = name + " line " + std::to_string(reader.line());
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != header.size()) {
      throw FormatError(at + ": expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    std::size_t row = 0;
    try {
      row = table.AddRow(fields[0]);
    } catch (const ParameterError& e) {
      throw FormatError(at + ": " + e.what());
    }
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        table.Set(row, header[i], ParseNumber(fields[i]));
      } catch (const FormatError& e) {
        throw FormatError(at + ", column " + header[i] + ": " + e.what());
      }
    }
  }
  return table;
}

ResultsTable ReadResults(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open results " + path.string());
  return ParseResults(in, path.string());
}

}  // namespace aesthia
