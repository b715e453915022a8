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

#include "aesthia/ranking.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "aesthia/error.h"

namespace aesthia {
namespace {

constexpr double kQ = std::numbers::ln10 / 400.0;

std::size_t Slot(Prompt p) { return p == Prompt::kAesthetic ? 0 : 1; }

void CheckRating(const Rating& r) {
  if (!std::isfinite(r.rating) || !std::isfinite(r.rd) || !(r.rd > 0)) {
    throw ParameterError("rating must be finite with RD > 0");
  }
}

Rating UpdateOne(const Rating& self, const Rating& opp, double score) {
  const double g = GlickoG(opp.rd);
  const double e = GlickoExpected(self, opp);
  const double inv_d2 = kQ * kQ * g * g * e * (1 - e);
  const double precision = 1 / (self.rd * self.rd) + inv_d2;
  Rating out;
  out.rating = self.rating + kQ / precision * g * (score - e);
  out.rd = std::sqrt(1 / precision);
  out.matches = self.matches + 1;
  return out;
}

}  // namespace

double Score(MatchResult r) {
  switch (r) {
    case MatchResult::kWin:
      return 1.0;
    case MatchResult::kTie:
      return 0.5;
    case MatchResult::kLoss:
      return 0.0;
  }
  return 0.5;
}

double GlickoG(double rd) {
  return 1 / std::sqrt(1 + 3 * kQ * kQ * rd * rd /
                               (std::numbers::pi * std::numbers::pi));
}

double GlickoExpected(const Rating& player, const Rating& opponent) {
  return 1 / (1 + std::pow(10.0, -GlickoG(opponent.rd) *
                                     (player.rating - opponent.rating) / 400));
}

std::pair<Rating, Rating> GlickoUpdate(const Rating& a, const Rating& b,
                                       MatchResult a_result) {
  CheckRating(a);
  CheckRating(b);
  const double s = Score(a_result);
  return {UpdateOne(a, b, s), UpdateOne(b, a, 1 - s)};
}

void RankingTable::Seed(const std::string& dataset,
                        std::span<const std::string> ids) {
  auto& images = ratings_[dataset];
  for (const std::string& id : ids) images.try_emplace(id);
  seeded_[dataset] = true;
}

void RankingTable::Apply(const ComparisonEvent& event) {
  if (!event.outcome) throw ParameterError("event has no outcome");
  if (event.dataset.empty() || event.left.empty() || event.right.empty()) {
    throw ParameterError("event has an empty dataset or image id");
  }
  if (event.left == event.right) {
    throw ParameterError("event compares image '" + event.left +
                         "' with itself");
  }
  auto& images = ratings_[event.dataset];
  if (seeded_.contains(event.dataset)) {
    for (const std::string* id : {&event.left, &event.right}) {
      if (!images.contains(*id)) {
        throw ParameterError("unknown image '" + *id + "' in dataset '" +
                             event.dataset + "'");
      }
    }
  }
  Rating& left = images[event.left][Slot(event.prompt)];
  Rating& right = images[event.right][Slot(event.prompt)];
  MatchResult result = MatchResult::kTie;
  if (*event.outcome == Outcome::kLeft) result = MatchResult::kWin;
  if (*event.outcome == Outcome::kRight) result = MatchResult::kLoss;
  std::tie(left, right) = GlickoUpdate(left, right, result);
}

Rating RankingTable::Get(const std::string& dataset, const std::string& image,
                         Prompt prompt) const {
  auto d = ratings_.find(dataset);
  if (d == ratings_.end()) return Rating{};
  auto i = d->second.find(image);
  if (i == d->second.end()) return Rating{};
  return i->second[Slot(prompt)];
}

std::vector<std::string> RankingTable::Datasets() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : ratings_) out.push_back(name);
  return out;
}

std::vector<std::string> RankingTable::Images(const std::string& dataset) const {
  std::vector<std::string> out;
  if (auto d = ratings_.find(dataset); d != ratings_.end()) {
    for (const auto& [id, _] : d->second) out.push_back(id);
  }
  return out;
}

std::size_t RankingTable::ImageCount() const {
  std::size_t n = 0;
  for (const auto& [_, images] : ratings_) n += images.size();
  return n;
}

std::vector<RankedImage> RankingTable::Ranked(const std::string& dataset,
                                              Prompt prompt) const {
  std::vector<RankedImage> out;
  if (auto d = ratings_.find(dataset); d != ratings_.end()) {
    for (const auto& [id, r] : d->second) out.push_back({id, r[Slot(prompt)]});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedImage& a, const RankedImage& b) {
                     return a.rating.rating > b.rating.rating;
                   });
  return out;
}

ReplayResult Replay(std::span<const ComparisonEvent> events,
                    RankingTable initial) {
  ReplayResult result{std::move(initial), 0, {}};
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      result.table.Apply(events[i]);
      ++result.applied;
    } catch (const ParameterError& e) {
      result.rejected.emplace_back(i, e.what());
    }
  }
  return result;
}

struct RdFilter {
  static FilterResult Run(const RankingTable& table, double max_rd) {
    FilterResult out;
    for (const auto& [dataset, images] : table.ratings_) {
      auto& kept = out.table.ratings_[dataset];
      if (table.seeded_.contains(dataset)) out.table.seeded_[dataset] = true;
      for (const auto& [id, r] : images) {
        ++out.total;
        if (r[0].rd < max_rd && r[1].rd < max_rd) {
          kept.emplace(id, r);
          ++out.retained;
        }
      }
    }
    return out;
  }
};

FilterResult FilterByRd(const RankingTable& table, double max_rd) {
  return RdFilter::Run(table, max_rd);
}

std::string FormatRetained(std::size_t retained, std::size_t total) {
  const double pct =
      total == 0 ? 0.0 : 100.0 * static_cast<double>(retained) / total;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu (%.1f%%)", retained, pct);
  return buf;
}

}  // namespace aesthia
