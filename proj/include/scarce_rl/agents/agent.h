// Copyright 2026 The scarce-rl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCARCE_RL_AGENTS_AGENT_H_
#define SCARCE_RL_AGENTS_AGENT_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scarce_rl/core/action.h"
#include "scarce_rl/core/rng.h"
#include "scarce_rl/environments/environment.h"

namespace scarce_rl {

// Keeps the best episode seen so far, scored on the first `scored_years`
// yearly rewards. The first of equally scored episodes wins.
class BestTracker {
 public:
  explicit BestTracker(int scored_years = kHorizon)
      : scored_years_(scored_years) {}

  // Returns true when `record` became the new best.
  bool offer(const EpisodeRecord& record);

  bool has_value() const { return best_.has_value(); }
  const EpisodeRecord& best() const { return *best_; }
  double best_score() const { return best_score_; }
  int scored_years() const { return scored_years_; }

 private:
  int scored_years_;
  std::optional<EpisodeRecord> best_;
  double best_score_ = 0.0;
};

// What a finished agent run reports to the harness.
struct AgentResult {
  EpisodeRecord best;
  // best.total, or the partial sum for agents scored on fewer years.
  double score = 0.0;
  int scored_years = kHorizon;
};

AgentResult make_result(const BestTracker& tracker);

// Uniform agent surface used by the harness and the CLI.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string id() const = 0;
  virtual AgentResult run(EpisodicEnv& env, SeededRng& rng) = 0;
};

// Known ids: random_search, ga, full_sequence_break, qlearning,
// qlearning_seq_break, bo1, bo2, bo3. `config` keys mirror the matching
// config struct's fields; unknown keys are rejected.
std::unique_ptr<Agent> make_agent(const std::string& id,
                                  const nlohmann::json& config = {});

std::vector<std::string> known_agent_ids();

}  // namespace scarce_rl

#endif  // SCARCE_RL_AGENTS_AGENT_H_
