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

// Corpus manifests and measure-result files.

#ifndef AESTHIA_DATASETS_H_
#define AESTHIA_DATASETS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aesthia/measures.h"
#include "aesthia/results_table.h"

namespace aesthia {

struct ManifestEntry {
  std::string id;
  std::filesystem::path path;  // absolute or relative to the working dir
  std::optional<double> score;
  std::optional<std::string> category;  // opaque label
};

struct DatasetManifest {
  std::string name;
  std::vector<ManifestEntry> entries;

  const ManifestEntry* Find(const std::string& id) const;
};

// Reads a CSV with header `id,path,score,category` (score and category may
// be empty). Relative image paths resolve against the manifest's directory.
// The dataset name defaults to the file stem. Errors carry the line number:
// IoError for an unreadable manifest or image path, FormatError for a bad
// header, duplicate id or non-numeric score.
DatasetManifest LoadManifest(const std::filesystem::path& path,
                             std::optional<std::string> name = std::nullopt);

// `id`, the selected measures in canonical order, then `score`.
std::vector<std::string> ResultColumns(
    const MeasureSelection& selection = MeasureSelection::All());

// One row per manifest entry, in manifest order. `measures[i]` belongs to
// `manifest.entries[i]`.
ResultsTable BuildResultsTable(const DatasetManifest& manifest,
                               const std::vector<MeasureVector>& measures,
                               const MeasureSelection& selection =
                                   MeasureSelection::All());

// CSV with the table's columns after `id`, numbers as %.9g, missing cells
// empty. Throws ParameterError for an empty table, IoError if unwritable.
void WriteResults(const ResultsTable& table, const std::filesystem::path& path);
std::string FormatResults(const ResultsTable& table);

// Reads any CSV whose first column is `id` and whose other columns are
// numeric or empty.
ResultsTable ReadResults(const std::filesystem::path& path);
ResultsTable ParseResults(std::istream& in, const std::string& name);

}  // namespace aesthia

#endif  // AESTHIA_DATASETS_H_
