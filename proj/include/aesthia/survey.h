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

// Survey backend: sessions, randomized pair issuance, choice recording and
// live ratings, all backed by an append-only JSON-lines journal.
//
// The journal holds three record kinds, distinguished by "kind":
//   session  a participant's token and demographics
//   issue    a pending comparison handed to a session
//   result   the outcome and duration for an issued comparison
// Ratings are never stored; on start-up the journal is replayed and the
// ranking table rebuilt from the results in journal order.

#ifndef AESTHIA_SURVEY_H_
#define AESTHIA_SURVEY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aesthia/datasets.h"
#include "aesthia/error.h"
#include "aesthia/events.h"
#include "aesthia/ranking.h"

namespace aesthia {

// Unknown session, comparison target or dataset.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// The comparison is not pending (already finalized or never issued).
class ConflictError : public Error {
 public:
  using Error::Error;
};

// A request field holds an inadmissible value.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Demographics {
  std::string age_range;
  std::string gender;
  std::string expertise;
};

std::span<const std::string_view> AgeRanges();
std::span<const std::string_view> Genders();
std::span<const std::string_view> ExpertiseLevels();

// Throws ValidationError naming the first bad field.
void ValidateDemographics(const Demographics& d);

struct Session {
  std::string session_id;
  Demographics demographics;
  int comparisons_completed = 0;
  std::int64_t created_at_ms = 0;
};

struct ServiceOptions {
  std::vector<DatasetManifest> datasets;
  std::filesystem::path journal_path;
  // Weight pair selection towards images with high RD for the drawn
  // prompt. Off by default: pairs are uniform.
  bool rd_biased_sampler = false;
  // Seeds pair/prompt sampling; tokens stay unpredictable regardless.
  std::optional<std::uint64_t> seed;
  // fsync the journal after every append.
  bool sync_writes = true;
};

struct RankingsView {
  std::string dataset;
  Prompt prompt = Prompt::kAesthetic;
  std::vector<RankedImage> images;
  std::size_t retained = 0;
  std::size_t total = 0;
  double RetainedFraction() const {
    return total == 0 ? 0.0 : static_cast<double>(retained) / total;
  }
};

class SurveyService {
 public:
  // Replays an existing journal. Throws ParameterError if no dataset is
  // configured or a dataset has fewer than two images, IoError if the
  // journal cannot be opened, FormatError if it is corrupt.
  explicit SurveyService(ServiceOptions options);
  ~SurveyService();

  SurveyService(const SurveyService&) = delete;
  SurveyService& operator=(const SurveyService&) = delete;

  Session CreateSession(const Demographics& demographics);

  // Throws NotFoundError for an unknown session.
  ComparisonEvent NextComparison(const std::string& session_id);
  int CompletedComparisons(const std::string& session_id) const;

  // Finalizes a pending comparison and applies it to the ratings. Throws
  // ValidationError for a negative duration and ConflictError if the
  // comparison is unknown or already finalized.
  ComparisonEvent SubmitChoice(const std::string& comparison_id,
                               Outcome outcome, std::int64_t duration_ms);

  // Throws NotFoundError for an unknown dataset. Without `max_rd` every
  // image is listed.
  RankingsView GetRankings(const std::string& dataset, Prompt prompt,
                           std::optional<double> max_rd) const;

  // Finalized events in submission order.
  std::vector<ComparisonEvent> ExportEvents() const;
  std::string ExportNdjson() const;

  RankingTable Snapshot() const;
  // The table every replay starts from: all configured images, unrated.
  RankingTable SeedTable() const;

  // Image file for the image endpoint; nullopt if unknown.
  std::optional<std::filesystem::path> ImagePath(const std::string& dataset,
                                                 const std::string& id) const;

  const std::vector<DatasetManifest>& datasets() const {
    return options_.datasets;
  }

 private:
  void LoadJournal();
  void ApplyRecord(const std::string& line, int number);
  void Append(const std::string& line);
  std::string NewToken();
  std::int64_t NowMs() const;
  std::pair<std::size_t, std::size_t> DrawPair(std::size_t dataset,
                                               Prompt prompt);

  ServiceOptions options_;
  mutable std::mutex mu_;
  int fd_ = -1;
  std::mt19937_64 sampler_;
  std::mt19937_64 tokens_;
  std::unordered_map<std::string, Session> sessions_;
  std::unordered_map<std::string, ComparisonEvent> pending_;
  std::unordered_map<std::string, bool> finalized_;
  std::vector<ComparisonEvent> results_;
  RankingTable table_;
};

}  // namespace aesthia

#endif  // AESTHIA_SURVEY_H_
