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

// Synthetic survey logs drawn from a Bradley-Terry preference.

#ifndef AESTHIA_SIMULATE_H_
#define AESTHIA_SIMULATE_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aesthia/events.h"

namespace aesthia {

struct SimulationOptions {
  int events = 2000;
  int items = 20;
  std::uint64_t seed = 1;
  // Probability that a comparison is answered "can't decide".
  double tie_probability = 0.0;
  std::string dataset = "synthetic";
};

struct Simulation {
  std::vector<std::string> items;
  // Log-strength per item, one vector per prompt (aesthetic, complexity).
  std::array<std::vector<double>, 2> strengths;
  std::vector<ComparisonEvent> events;
};

// Uniform random pairs and prompts; the left image wins with probability
// exp(s_l) / (exp(s_l) + exp(s_r)) for the prompt's strengths, which are
// standard normal draws. Deterministic per seed. Throws ParameterError for
// events < 1 or items < 2.
Simulation SimulateSurvey(const SimulationOptions& options);

}  // namespace aesthia

#endif  // AESTHIA_SIMULATE_H_
