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

#include "aesthia/events.h"

#include <algorithm>

#include "aesthia/error.h"
#include "json.hpp"

namespace aesthia {
namespace {

std::string RequireString(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw FormatError(std::string("missing or non-string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

std::string_view PromptName(Prompt p) {
  return p == Prompt::kAesthetic ? "aesthetic" : "complexity";
}

std::optional<Prompt> ParsePrompt(std::string_view s) {
  if (s == "aesthetic") return Prompt::kAesthetic;
  if (s == "complexity") return Prompt::kComplexity;
  return std::nullopt;
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kLeft:
      return "left";
    case Outcome::kRight:
      return "right";
    case Outcome::kTie:
      return "tie";
  }
  return "tie";
}

std::optional<Outcome> ParseOutcome(std::string_view s) {
  if (s == "left") return Outcome::kLeft;
  if (s == "right") return Outcome::kRight;
  if (s == "tie") return Outcome::kTie;
  return std::nullopt;
}

std::string_view PromptText(Prompt p) {
  return p == Prompt::kAesthetic ? "Which one of these images do you like the most?"
                                 : "Which of these images is more complex?";
}

std::string EventToJson(const ComparisonEvent& e) {
  nlohmann::ordered_json j;
  j["comparison_id"] = e.comparison_id;
  j["session_id"] = e.session_id;
  j["dataset"] = e.dataset;
  j["left"] = e.left;
  j["right"] = e.right;
  j["prompt"] = PromptName(e.prompt);
  if (e.outcome) j["outcome"] = OutcomeName(*e.outcome);
  if (e.duration_ms) j["duration_ms"] = *e.duration_ms;
  j["timestamp"] = e.timestamp_ms;
  return j.dump();
}

ComparisonEvent EventFromJson(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("event must be a JSON object");
  ComparisonEvent e;
  e.comparison_id = RequireString(j, "comparison_id");
  e.session_id = j.value("session_id", std::string());
  e.dataset = RequireString(j, "dataset");
  e.left = RequireString(j, "left");
  e.right = RequireString(j, "right");
  const std::string prompt = RequireString(j, "prompt");
  const auto p = ParsePrompt(prompt);
  if (!p) throw FormatError("unknown prompt '" + prompt + "'");
  e.prompt = *p;
  if (j.contains("outcome") && !j["outcome"].is_null()) {
    if (!j["outcome"].is_string()) throw FormatError("outcome must be a string");
    const auto o = ParseOutcome(j["outcome"].get<std::string>());
    if (!o) {
      throw FormatError("unknown outcome '" + j["outcome"].get<std::string>() +
                        "'");
    }
    e.outcome = *o;
  }
  if (j.contains("duration_ms") && !j["duration_ms"].is_null()) {
    if (!j["duration_ms"].is_number_integer()) {
      throw FormatError("duration_ms must be an integer");
    }
    e.duration_ms = j["duration_ms"].get<std::int64_t>();
  }
  if (j.contains("timestamp")) {
    if (!j["timestamp"].is_number_integer()) {
      throw FormatError("timestamp must be an integer");
    }
    e.timestamp_ms = j["timestamp"].get<std::int64_t>();
  }
  return e;
}

EventLogReadResult ReadEventLog(std::istream& in) {
  EventLogReadResult result;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      result.events.push_back(EventFromJson(line));
    } catch (const FormatError& e) {
      result.malformed.emplace_back(number, e.what());
    }
  }
  return result;
}

std::vector<ComparisonEvent> DiscardSlow(std::vector<ComparisonEvent> events,
                                         std::int64_t max_duration_ms) {
  std::erase_if(events, [&](const ComparisonEvent& e) {
    return e.duration_ms && *e.duration_ms > max_duration_ms;
  });
  return events;
}

}  // namespace aesthia
