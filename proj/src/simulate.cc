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

#include "aesthia/simulate.h"

#include <cmath>
#include <cstdio>
#include <random>

#include "aesthia/error.h"

namespace aesthia {

Simulation SimulateSurvey(const SimulationOptions& options) {
  if (options.events < 1) throw ParameterError("events must be >= 1");
  if (options.items < 2) throw ParameterError("items must be >= 2");
  if (!(options.tie_probability >= 0 && options.tie_probability < 1)) {
    throw ParameterError("tie probability must be in [0, 1)");
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, options.items - 1);
  std::uniform_int_distribution<int> pick_other(0, options.items - 2);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::int64_t> think_ms(1500, 20000);

  Simulation sim;
  const int width = static_cast<int>(std::to_string(options.items - 1).size());
  for (int i = 0; i < options.items; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "item%0*d", width, i);
    sim.items.emplace_back(buf);
  }
  for (auto& s : sim.strengths) {
    s.resize(options.items);
    for (double& v : s) v = normal(rng);
  }

  constexpr std::int64_t kEpochMs = 1'600'000'000'000;
  for (int n = 0; n < options.events; ++n) {
    const int a = pick(rng);
    int b = pick_other(rng);
    if (b >= a) ++b;
    const Prompt prompt = coin(rng) ? Prompt::kComplexity : Prompt::kAesthetic;
    const auto& s = sim.strengths[prompt == Prompt::kAesthetic ? 0 : 1];

    ComparisonEvent e;
    char id[32];
    std::snprintf(id, sizeof id, "sim-%06d", n);
    e.comparison_id = id;
    std::snprintf(id, sizeof id, "sim-session-%03d", n / 10);
    e.session_id = id;
    e.dataset = options.dataset;
    e.left = sim.items[a];
    e.right = sim.items[b];
    e.prompt = prompt;
    if (unit(rng) < options.tie_probability) {
      e.outcome = Outcome::kTie;
    } else {
      const double p_left = 1 / (1 + std::exp(s[b] - s[a]));
      e.outcome = unit(rng) < p_left ? Outcome::kLeft : Outcome::kRight;
    }
    e.duration_ms = think_ms(rng);
    e.timestamp_ms = kEpochMs + static_cast<std::int64_t>(n) * 15'000;
    sim.events.push_back(std::move(e));
  }
  return sim;
}

}  // namespace aesthia
