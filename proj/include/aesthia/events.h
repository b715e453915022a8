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

// Pairwise comparison records and their JSON-lines form.

#ifndef AESTHIA_EVENTS_H_
#define AESTHIA_EVENTS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aesthia {

enum class Prompt { kAesthetic, kComplexity };
enum class Outcome { kLeft, kRight, kTie };

std::string_view PromptName(Prompt p);
std::optional<Prompt> ParsePrompt(std::string_view s);
std::string_view OutcomeName(Outcome o);
std::optional<Outcome> ParseOutcome(std::string_view s);

// Wording shown to participants.
std::string_view PromptText(Prompt p);

// One comparison. `outcome` and `duration_ms` are empty while pending.
struct ComparisonEvent {
  std::string comparison_id;
  std::string session_id;
  std::string dataset;
  std::string left;
  std::string right;
  Prompt prompt = Prompt::kAesthetic;
  std::optional<Outcome> outcome;
  std::optional<std::int64_t> duration_ms;
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const ComparisonEvent&,
                         const ComparisonEvent&) = default;
};

// Single-line JSON object: comparison_id, session_id, dataset, left, right,
// prompt, outcome, duration_ms, timestamp. Pending events omit outcome and
// duration_ms.
std::string EventToJson(const ComparisonEvent& e);

// Throws FormatError describing the first problem.
ComparisonEvent EventFromJson(std::string_view line);

struct EventLogReadResult {
  std::vector<ComparisonEvent> events;
  // (1-based line number, reason) for every skipped line.
  std::vector<std::pair<int, std::string>> malformed;
};

// Parses a JSON-lines stream, skipping blank lines and collecting
// malformed ones instead of stopping.
EventLogReadResult ReadEventLog(std::istream& in);

// Drops finalized events slower than `max_duration_ms`.
std::vector<ComparisonEvent> DiscardSlow(std::vector<ComparisonEvent> events,
                                         std::int64_t max_duration_ms);

}  // namespace aesthia

#endif  // AESTHIA_EVENTS_H_
