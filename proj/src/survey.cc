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

#include "aesthia/survey.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aesthia {
namespace {

constexpr std::array<std::string_view, 7> kAgeRanges = {
    "18-24", "25-34", "35-44", "45-54", "55-64", "65+", "undisclosed"};
constexpr std::array<std::string_view, 5> kGenders = {
    "female", "male", "non-binary", "other", "undisclosed"};
constexpr std::array<std::string_view, 5> kExpertise = {
    "none", "amateur", "student", "professional", "undisclosed"};

template <std::size_t N>
void CheckEnum(const std::array<std::string_view, N>& allowed,
               const std::string& value, const char* field) {
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
    std::string list;
    for (std::string_view a : allowed) {
      if (!list.empty()) list += ", ";
      list += a;
    }
    throw ValidationError(field, std::string("invalid ") + field + " '" +
                                     value + "'; expected one of: " + list);
  }
}

nlohmann::ordered_json EventFields(const ComparisonEvent& e) {
  return nlohmann::ordered_json::parse(EventToJson(e));
}

}  // namespace

std::span<const std::string_view> AgeRanges() { return kAgeRanges; }
std::span<const std::string_view> Genders() { return kGenders; }
std::span<const std::string_view> ExpertiseLevels() { return kExpertise; }

void ValidateDemographics(const Demographics& d) {
  CheckEnum(kAgeRanges, d.age_range, "age_range");
  CheckEnum(kGenders, d.gender, "gender");
  CheckEnum(kExpertise, d.expertise, "expertise");
}

SurveyService::SurveyService(ServiceOptions options)
    : options_(std::move(options)) {
  if (options_.datasets.empty()) {
    throw ParameterError("survey needs at least one dataset");
  }
  for (const DatasetManifest& d : options_.datasets) {
    if (d.entries.size() < 2) {
      throw ParameterError("dataset '" + d.name +
                           "' needs at least two images, has " +
                           std::to_string(d.entries.size()));
    }
    if (std::count_if(options_.datasets.begin(), options_.datasets.end(),
                      [&](const DatasetManifest& o) { return o.name == d.name; }) > 1) {
      throw ParameterError("dataset name '" + d.name + "' configured twice");
    }
  }
  std::random_device entropy;
  tokens_.seed((static_cast<std::uint64_t>(entropy()) << 32) ^ entropy());
  sampler_.seed(options_.seed ? *options_.seed
                              : (static_cast<std::uint64_t>(entropy()) << 32) ^
                                    entropy());
  table_ = SeedTable();
  LoadJournal();
  fd_ = ::open(options_.journal_path.c_str(), O_WRONLY | O_APPEND | O_CREAT,
               0644);
  if (fd_ < 0) {
    throw IoError("cannot open journal " + options_.journal_path.string() +
                  ": " + std::strerror(errno));
  }
}

SurveyService::~SurveyService() {
  if (fd_ >= 0) ::close(fd_);
}

RankingTable SurveyService::SeedTable() const {
  RankingTable t;
  for (const DatasetManifest& d : options_.datasets) {
    std::vector<std::string> ids;
    for (const ManifestEntry& e : d.entries) ids.push_back(e.id);
    t.Seed(d.name, ids);
  }
  return t;
}

void SurveyService::LoadJournal() {
  const auto& path = options_.journal_path;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read journal " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  // A crash mid-append can leave an unterminated tail; drop it.
  const std::size_t end = text.rfind('\n');
  const std::size_t keep = end == std::string::npos ? 0 : end + 1;
  if (keep != text.size()) {
    std::filesystem::resize_file(path, keep);
    text.resize(keep);
  }
  std::istringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.empty()) continue;
    ApplyRecord(line, number);
  }
}

void SurveyService::ApplyRecord(const std::string& line, int number) {
  const std::string where =
      options_.journal_path.string() + " line " + std::to_string(number);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
  const std::string kind = j.value("kind", "");
  try {
    if (kind == "session") {
      Session s;
      s.session_id = j.at("session_id").get<std::string>();
      s.demographics = {j.at("age_range").get<std::string>(),
                        j.at("gender").get<std::string>(),
                        j.at("expertise").get<std::string>()};
      s.created_at_ms = j.at("created_at").get<std::int64_t>();
      sessions_[s.session_id] = s;
    } else if (kind == "issue") {
      j.erase("kind");
      ComparisonEvent e = EventFromJson(j.dump());
      pending_[e.comparison_id] = e;
    } else if (kind == "result") {
      const std::string id = j.at("comparison_id").get<std::string>();
      auto it = pending_.find(id);
      if (it == pending_.end()) {
        throw FormatError("result for unknown comparison '" + id + "'");
      }
      ComparisonEvent e = it->second;
      pending_.erase(it);
      const auto outcome = ParseOutcome(j.at("outcome").get<std::string>());
      if (!outcome) throw FormatError("bad outcome");
      e.outcome = *outcome;
      e.duration_ms = j.at("duration_ms").get<std::int64_t>();
      e.timestamp_ms = j.at("timestamp").get<std::int64_t>();
      table_.Apply(e);
      finalized_[e.comparison_id] = true;
      if (auto s = sessions_.find(e.session_id); s != sessions_.end()) {
        ++s->second.comparisons_completed;
      }
      results_.push_back(std::move(e));
    } else {
      throw FormatError("unknown record kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(where + ": " + e.what());
  } catch (const Error& e) {
    throw FormatError(where + ": " + e.what());
  }
}

void SurveyService::Append(const std::string& line) {
  const std::string record = line + "\n";
  // One write per record; O_APPEND keeps concurrent writers from
  // interleaving inside a line.
  const char* data = record.data();
  std::size_t left = record.size();
  while (left > 0) {
    const ssize_t n = ::write(fd_, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError("journal append failed: " + std::string(std::strerror(errno)));
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (options_.sync_writes && ::fdatasync(fd_) != 0) {
    throw IoError("journal sync failed: " + std::string(std::strerror(errno)));
  }
}

std::string SurveyService::NewToken() {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(tokens_()),
                static_cast<unsigned long long>(tokens_()));
  return buf;
}

std::int64_t SurveyService::NowMs() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

Session SurveyService::CreateSession(const Demographics& demographics) {
  ValidateDemographics(demographics);
  std::lock_guard lock(mu_);
  Session s;
  do {
    s.session_id = NewToken();
  } while (sessions_.contains(s.session_id));
  s.demographics = demographics;
  s.created_at_ms = NowMs();
  nlohmann::ordered_json j;
  j["kind"] = "session";
  j["session_id"] = s.session_id;
  j["age_range"] = demographics.age_range;
  j["gender"] = demographics.gender;
  j["expertise"] = demographics.expertise;
  j["created_at"] = s.created_at_ms;
  Append(j.dump());
  sessions_[s.session_id] = s;
  return s;
}

std::pair<std::size_t, std::size_t> SurveyService::DrawPair(std::size_t dataset,
                                                            Prompt prompt) {
  const DatasetManifest& d = options_.datasets[dataset];
  const std::size_t n = d.entries.size();
  if (!options_.rd_biased_sampler) {
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    std::uniform_int_distribution<std::size_t> second(0, n - 2);
    const std::size_t a = first(sampler_);
    std::size_t b = second(sampler_);
    if (b >= a) ++b;
    return {a, b};
  }
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rd = table_.Get(d.name, d.entries[i].id, prompt).rd;
    weights[i] = rd * rd;
  }
  std::discrete_distribution<std::size_t> first(weights.begin(), weights.end());
  const std::size_t a = first(sampler_);
  weights[a] = 0;
  std::discrete_distribution<std::size_t> second(weights.begin(), weights.end());
  return {a, second(sampler_)};
}

ComparisonEvent SurveyService::NextComparison(const std::string& session_id) {
  std::lock_guard lock(mu_);
  if (!sessions_.contains(session_id)) {
    throw NotFoundError("unknown session '" + session_id + "'");
  }
  std::uniform_int_distribution<std::size_t> pick_dataset(
      0, options_.datasets.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  const std::size_t dataset = pick_dataset(sampler_);
  const Prompt prompt = coin(sampler_) ? Prompt::kComplexity : Prompt::kAesthetic;
  const auto [a, b] = DrawPair(dataset, prompt);

  const DatasetManifest& d = options_.datasets[dataset];
  ComparisonEvent e;
  do {
    e.comparison_id = NewToken();
  } while (pending_.contains(e.comparison_id) ||
           finalized_.contains(e.comparison_id));
  e.session_id = session_id;
  e.dataset = d.name;
  e.left = d.entries[a].id;
  e.right = d.entries[b].id;
  e.prompt = prompt;
  e.timestamp_ms = NowMs();

  auto record = EventFields(e);
  nlohmann::ordered_json j;
  j["kind"] = "issue";
  for (auto& [k, v] : record.items()) j[k] = v;
  Append(j.dump());
  pending_[e.comparison_id] = e;
  return e;
}

int SurveyService::CompletedComparisons(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw NotFoundError("unknown session '" + session_id + "'");
  }
  return it->second.comparisons_completed;
}

ComparisonEvent SurveyService::SubmitChoice(const std::string& comparison_id,
                                            Outcome outcome,
                                            std::int64_t duration_ms) {
  if (duration_ms < 0) {
    throw ValidationError("duration_ms", "duration_ms must be >= 0");
  }
  std::lock_guard lock(mu_);
  auto it = pending_.find(comparison_id);
  if (it == pending_.end()) {
    if (finalized_.contains(comparison_id)) {
      throw ConflictError("comparison '" + comparison_id +
                          "' was already submitted");
    }
    throw ConflictError("comparison '" + comparison_id + "' is not pending");
  }
  ComparisonEvent e = it->second;
  e.outcome = outcome;
  e.duration_ms = duration_ms;
  e.timestamp_ms = NowMs();

  nlohmann::ordered_json j;
  j["kind"] = "result";
  j["comparison_id"] = e.comparison_id;
  j["outcome"] = OutcomeName(outcome);
  j["duration_ms"] = duration_ms;
  j["timestamp"] = e.timestamp_ms;
  Append(j.dump());

  pending_.erase(it);
  table_.Apply(e);
  finalized_[e.comparison_id] = true;
  if (auto s = sessions_.find(e.session_id); s != sessions_.end()) {
    ++s->second.comparisons_completed;
  }
  results_.push_back(e);
  return e;
}

RankingsView SurveyService::GetRankings(const std::string& dataset,
                                        Prompt prompt,
                                        std::optional<double> max_rd) const {
  RankingTable snapshot;
  {
    std::lock_guard lock(mu_);
    snapshot = table_;
  }
  const auto datasets = snapshot.Datasets();
  if (std::find(datasets.begin(), datasets.end(), dataset) == datasets.end()) {
    throw NotFoundError("unknown dataset '" + dataset + "'");
  }
  RankingsView view;
  view.dataset = dataset;
  view.prompt = prompt;
  view.total = snapshot.Images(dataset).size();
  if (max_rd) {
    const FilterResult kept = FilterByRd(snapshot, *max_rd);
    view.images = kept.table.Ranked(dataset, prompt);
  } else {
    view.images = snapshot.Ranked(dataset, prompt);
  }
  view.retained = view.images.size();
  return view;
}

std::vector<ComparisonEvent> SurveyService::ExportEvents() const {
  std::lock_guard lock(mu_);
  return results_;
}

std::string SurveyService::ExportNdjson() const {
  std::string out;
  for (const ComparisonEvent& e : ExportEvents()) {
    out += EventToJson(e);
    out += '\n';
  }
  return out;
}

RankingTable SurveyService::Snapshot() const {
  std::lock_guard lock(mu_);
  return table_;
}

std::optional<std::filesystem::path> SurveyService::ImagePath(
    const std::string& dataset, const std::string& id) const {
  for (const DatasetManifest& d : options_.datasets) {
    if (d.name != dataset) continue;
    if (const ManifestEntry* e = d.Find(id)) return e->path;
  }
  return std::nullopt;
}

}  // namespace aesthia
