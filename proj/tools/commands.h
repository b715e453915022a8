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

// Subcommands of the `aesthia` tool. Each Run* function does the work of
// one subcommand and returns a report; RunCli parses arguments and maps
// outcomes to exit codes.

#ifndef AESTHIA_TOOLS_COMMANDS_H_
#define AESTHIA_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aesthia/measures.h"
#include "aesthia/stats.h"

namespace aesthia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;
inline constexpr int kExitUsage = 2;

struct MeasureOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  MeasureConfig config;
  MeasureSelection selection = MeasureSelection::All();
  int jobs = 0;  // 0 = hardware concurrency
};

struct MeasureReport {
  std::size_t images = 0;
  // (image id, "measure: message") for every failure.
  std::vector<std::pair<std::string, std::string>> failures;
};

MeasureReport RunMeasure(const MeasureOptions& options);

enum class MatrixFormat { kText, kCsv, kMarkdown };

struct CorrelateOptions {
  std::filesystem::path results;
  std::string score_column = "score";
  CorrelationMethod method = CorrelationMethod::kPearson;
  bool complete_rows = false;
  // Rows whose score is below this are dropped first.
  std::optional<double> min_score;
  MatrixFormat format = MatrixFormat::kText;
};

// Writes the rendered matrix to `out`. Throws ParameterError if the score
// column is missing and DomainError if fewer than three rows remain or the
// score column was excluded.
CorrelationMatrix RunCorrelate(const CorrelateOptions& options,
                               std::ostream& out);

struct RankOptions {
  std::filesystem::path log;
  std::filesystem::path out;
  double max_rd = 290.0;
  std::optional<std::string> dataset;
  std::optional<std::int64_t> discard_over_ms;
};

struct RankReport {
  std::size_t applied = 0;
  std::size_t malformed = 0;
  std::size_t rejected = 0;
  std::size_t discarded = 0;
  std::size_t retained = 0;
  std::size_t total = 0;
};

// Writes `image_id,prompt,rating,rd,matches` for the retained images, both
// prompts, each sorted by rating.
RankReport RunRank(const RankOptions& options);

struct SimulateOptions {
  std::filesystem::path out;
  std::optional<std::filesystem::path> truth;
  int events = 2000;
  int items = 20;
  std::uint64_t seed = 1;
  double tie_probability = 0.0;
  std::string dataset = "synthetic";
};

// Writes the event log as JSON lines and, if requested, the generating
// strengths as `image_id,aesthetic,complexity`.
void RunSimulate(const SimulateOptions& options);

struct PhysicalOptions {
  std::filesystem::path forms_dir;
  std::filesystem::path out;
};

struct PhysicalReport {
  std::size_t forms = 0;
  std::vector<std::pair<std::string, std::string>> failures;
};

// Scores every *.json in the directory, sorted by file name; id is the file
// stem.
PhysicalReport RunPhysical(const PhysicalOptions& options);

// Parses `argv` and runs one subcommand. Returns 0 on success, 1 when some
// inputs failed, 2 on usage errors.
int RunCli(int argc, const char* const* argv);

// Sets the spdlog level from AESTHIA_LOG (trace..off); logs go to stderr.
void ConfigureLogging();

}  // namespace aesthia::cli

#endif  // AESTHIA_TOOLS_COMMANDS_H_
