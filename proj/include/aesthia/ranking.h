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

// Glicko ratings for images compared in pairs.
//
// Two changes from the published system: RD is never inflated between
// games (images do not change over time), and every single comparison is
// its own rating period. Each image holds one rating per prompt.

#ifndef AESTHIA_RANKING_H_
#define AESTHIA_RANKING_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aesthia/events.h"

namespace aesthia {

inline constexpr double kInitialRating = 1500.0;
inline constexpr double kInitialRd = 350.0;

struct Rating {
  double rating = kInitialRating;
  double rd = kInitialRd;
  std::int64_t matches = 0;

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Score of the first player: win = 1, tie = 0.5, loss = 0.
enum class MatchResult { kLoss, kTie, kWin };
double Score(MatchResult r);

double GlickoG(double rd);
double GlickoExpected(const Rating& player, const Rating& opponent);

// One-game Glicko-1 update of both players from their pre-match values.
// Throws ParameterError for non-finite or non-positive-RD input.
std::pair<Rating, Rating> GlickoUpdate(const Rating& a, const Rating& b,
                                       MatchResult a_result);

struct RankedImage {
  std::string image_id;
  Rating rating;
};

// Ratings per (dataset, image, prompt). Images not yet seen read as the
// initial rating.
class RankingTable {
 public:
  // Registers a dataset's full image list. Events on a registered dataset
  // must name registered images.
  void Seed(const std::string& dataset, std::span<const std::string> ids);

  // Applies one finalized event. Throws ParameterError if it is malformed
  // (pending, left == right, empty ids, unknown image in a seeded dataset).
  void Apply(const ComparisonEvent& event);

  Rating Get(const std::string& dataset, const std::string& image,
             Prompt prompt) const;

  std::vector<std::string> Datasets() const;
  // Image ids of a dataset in lexicographic order.
  std::vector<std::string> Images(const std::string& dataset) const;
  std::size_t ImageCount() const;

  // Images of `dataset` sorted by rating (descending, ties by id).
  std::vector<RankedImage> Ranked(const std::string& dataset,
                                  Prompt prompt) const;

  friend bool operator==(const RankingTable&, const RankingTable&) = default;

 private:
  friend struct RdFilter;
  using PromptRatings = std::array<Rating, 2>;
  std::map<std::string, std::map<std::string, PromptRatings>> ratings_;
  std::map<std::string, bool> seeded_;
};

struct ReplayResult {
  RankingTable table;
  std::size_t applied = 0;
  // (event index, reason) for rejected events.
  std::vector<std::pair<std::size_t, std::string>> rejected;
};

// Applies events in order to a copy of `initial`. Malformed events are
// skipped and reported; replay continues.
ReplayResult Replay(std::span<const ComparisonEvent> events,
                    RankingTable initial = {});

struct FilterResult {
  RankingTable table;
  std::size_t retained = 0;
  std::size_t total = 0;

  double RetainedFraction() const {
    return total == 0 ? 0.0 : static_cast<double>(retained) / total;
  }
};

// Keeps images whose RD is below `max_rd` for both prompts.
FilterResult FilterByRd(const RankingTable& table,
                        double max_rd = std::numeric_limits<double>::infinity());

// "N (x.x%)"
std::string FormatRetained(std::size_t retained, std::size_t total);

}  // namespace aesthia

#endif  // AESTHIA_RANKING_H_
