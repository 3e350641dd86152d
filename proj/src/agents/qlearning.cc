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

#include "scarce_rl/agents/qlearning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "scarce_rl/agents/agent.h"

namespace scarce_rl {

void QConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0)) {
    throw std::invalid_argument("epsilon0 must lie in [0, 1]");
  }
  if (!(epsilon_floor >= 0.0 && epsilon_floor <= 1.0)) {
    throw std::invalid_argument("epsilon_floor must lie in [0, 1]");
  }
  if (episodes_phase2 < 0 || refine_probes < 0) {
    throw std::invalid_argument("episode and probe counts must be >= 0");
  }
  for (double r : {grid_resolution_coarse, grid_resolution_fine,
                   refine_distance}) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw std::invalid_argument("resolutions must lie in (0, 1]");
    }
  }
}

// ---------------------------------------------------------------------------
// QTable

QTable::QTable(std::vector<Action> grid)
    : grid_(std::move(grid)),
      values_(grid_.size() * kHorizon, 0.0),
      visits_(grid_.size() * kHorizon, 1) {
  if (grid_.empty()) throw std::invalid_argument("empty action grid");
}

std::size_t QTable::slot(int year, int action_index) const {
  if (year < 1 || year > kHorizon) {
    throw std::invalid_argument("year must lie in 1..5");
  }
  if (action_index < 0 || action_index >= static_cast<int>(grid_.size())) {
    throw std::invalid_argument("action index out of range");
  }
  return static_cast<std::size_t>(year - 1) * grid_.size() +
         static_cast<std::size_t>(action_index);
}

int QTable::index_of(const Action& a) const {
  const int idx = grid_index(grid_, a);
  if (idx < 0) throw std::invalid_argument("action is not on the Q grid");
  return idx;
}

double QTable::value(int year, int action_index) const {
  return values_[slot(year, action_index)];
}

int QTable::visits(int year, int action_index) const {
  return visits_[slot(year, action_index)];
}

int QTable::argmax(int year) const {
  const std::size_t base = slot(year, 0);
  int best = 0;
  for (int i = 1; i < static_cast<int>(grid_.size()); ++i) {
    if (values_[base + i] > values_[base + best]) best = i;
  }
  return best;
}

double QTable::max_value(int year) const {
  return value(year, argmax(year));
}

void QTable::update(int year, const Action& action, double reward,
                    std::optional<int> next_year, double gamma) {
  const std::size_t s = slot(year, index_of(action));
  const double bootstrap = next_year ? max_value(*next_year) : 0.0;
  const double alpha = 1.0 / visits_[s];
  values_[s] += alpha * (reward + gamma * bootstrap - values_[s]);
  visits_[s] += 1;
}

// ---------------------------------------------------------------------------
// Exploration

double stretched_epsilon(int episode, int episodes, double epsilon0) {
  if (episodes <= 0 || episode < 0 || episode >= episodes) {
    throw std::invalid_argument("episode index out of range");
  }
  return epsilon0 - episode / (episodes * 1.2);
}

double epsilon_schedule(int episode) {
  if (episode < 0 || episode > 15) {
    throw std::invalid_argument("episode index must lie in 0..15");
  }
  return stretched_epsilon(episode, 16, 0.8);
}

double linear_epsilon(int episode, int episodes, double epsilon0,
                      double floor) {
  if (episodes <= 0 || episode < 0 || episode >= episodes) {
    throw std::invalid_argument("episode index out of range");
  }
  if (episodes == 1) return epsilon0;
  return epsilon0 + (floor - epsilon0) * episode / (episodes - 1);
}

Action epsilon_greedy(const QTable& table, int year, double epsilon,
                      SeededRng& rng) {
  if (rng.bernoulli(epsilon)) {
    return table.grid()[rng.uniform_index(table.grid().size())];
  }
  return table.grid()[table.argmax(year)];
}

Policy greedy_policy(const QTable& table) {
  Policy p;
  for (int y = 1; y <= kHorizon; ++y) p[y - 1] = table.grid()[table.argmax(y)];
  return p;
}

// ---------------------------------------------------------------------------
// First-year search

namespace {

// Rewards measured for first-year probes, keyed by action.
class ProbeCache {
 public:
  const double* find(const Action& a) const {
    for (const auto& [action, reward] : entries_) {
      if (std::abs(action.itn() - a.itn()) < 1e-9 &&
          std::abs(action.irs() - a.irs()) < 1e-9) {
        return &reward;
      }
    }
    return nullptr;
  }
  void store(const Action& a, double r) {
    if (double* existing = const_cast<double*>(find(a))) {
      *existing = r;
    } else {
      entries_.emplace_back(a, r);
    }
  }

 private:
  std::vector<std::pair<Action, double>> entries_;
};

// Accumulates one episode's actions and rewards as steps are played.
class EpisodeLog {
 public:
  void add(const Action& a, double r) {
    actions_.push_back(a);
    rewards_.push_back(r);
  }
  bool full() const { return actions_.size() == kHorizon; }
  EpisodeRecord take() {
    std::array<double, kHorizon> rewards{};
    std::copy(rewards_.begin(), rewards_.end(), rewards.begin());
    EpisodeRecord rec = EpisodeRecord::from_rewards(Policy(actions_), rewards);
    actions_.clear();
    rewards_.clear();
    return rec;
  }

 private:
  std::vector<Action> actions_;
  std::vector<double> rewards_;
};

// Starts a fresh episode when the previous one is finished.
void begin_episode(EpisodicEnv& env) {
  if (env.episode_done() || env.current_year() != 1) env.reset();
}

// Plays years `from_year`..5 epsilon-greedily, updating the table.
void play_learning_years(EpisodicEnv& env, QTable& table, int from_year,
                         double epsilon, double gamma, SeededRng& rng,
                         EpisodeLog& log) {
  for (int y = from_year; y <= kHorizon; ++y) {
    const Action a = epsilon_greedy(table, y, epsilon, rng);
    const StepResult r = env.step(a);
    std::optional<int> next;
    if (y < kHorizon) next = y + 1;
    table.update(y, a, r.reward, next, gamma);
    log.add(a, r.reward);
  }
}

}  // namespace

FirstYearSearch first_year_search(EpisodicEnv& env, const QConfig& config,
                                  SeededRng& rng, QTable* table) {
  config.validate();
  FirstYearSearch out;
  ProbeCache cache;
  EpisodeLog log;
  QTable local_table(discretize_action_space(config.grid_resolution_fine));
  QTable& learn = table != nullptr ? *table : local_table;

  // One probe evaluation; the reward is attributed to the first-year surface
  // whichever step slot it occupies.
  auto measure = [&](const Action& probe) {
    if (config.probe_mode == ProbeMode::kFirstSlotOnly || env.episode_done()) {
      begin_episode(env);
    }
    const double reward = env.step(probe).reward;
    log.add(probe, reward);
    if (config.probe_mode == ProbeMode::kFirstSlotOnly) {
      play_learning_years(env, learn, 2, config.epsilon0, config.gamma, rng,
                          log);
    }
    if (log.full()) out.episodes.push_back(log.take());
    cache.store(probe, reward);
    ++out.evaluations_used;
    return reward;
  };

  const std::vector<Action> coarse =
      discretize_action_space(config.grid_resolution_coarse);
  int best = 0;
  std::vector<double> grid_rewards;
  for (const Action& probe : coarse) {
    grid_rewards.push_back(measure(probe));
    out.grid_probes.push_back(probe);
  }
  for (int i = 1; i < static_cast<int>(coarse.size()); ++i) {
    if (grid_rewards[i] > grid_rewards[best]) best = i;
  }

  RefinementState state =
      start_refinement(coarse[best], config.refine_distance, rng);
  for (int k = 0; k < config.refine_probes; ++k) {
    // Already-measured probes are answered from the cache and do not use an
    // evaluation; bounded in case every neighbor is known.
    for (int guard = 0; guard < 64; ++guard) {
      const double* known = cache.find(state.a_next);
      if (known == nullptr) break;
      state = refine_step(state, *known, *cache.find(state.a_max),
                          config.refine_distance, rng);
    }
    const double r = measure(state.a_next);
    out.refine_probes.push_back(state.a_next);
    state = refine_step(state, r, *cache.find(state.a_max),
                        config.refine_distance, rng);
  }

  // Finish a partially used packed episode on the incumbent.
  if (config.probe_mode == ProbeMode::kPacked && !env.episode_done() &&
      env.current_year() != 1) {
    while (!env.episode_done()) {
      log.add(state.a_max, env.step(state.a_max).reward);
    }
    out.episodes.push_back(log.take());
  }

  out.a_max = state.a_max;
  out.reward_max = *cache.find(state.a_max);
  return out;
}

// ---------------------------------------------------------------------------
// Learners

QLearningResult run_plain_qlearning(EpisodicEnv& env, const QConfig& config,
                                    SeededRng& rng, int episodes) {
  config.validate();
  if (episodes <= 0) throw std::invalid_argument("episodes must be positive");
  QLearningResult out{EpisodeRecord{},
                      QTable(discretize_action_space(
                          config.grid_resolution_fine)),
                      std::nullopt,
                      {}};
  BestTracker tracker;
  for (int e = 0; e < episodes && can_play_episode(env); ++e) {
    const double epsilon =
        config.plain_schedule == PlainSchedule::kLinear
            ? linear_epsilon(e, episodes, config.epsilon0, config.epsilon_floor)
            : std::max(0.0, stretched_epsilon(e, episodes, config.epsilon0));
    begin_episode(env);
    EpisodeLog log;
    play_learning_years(env, out.table, 1, epsilon, config.gamma, rng, log);
    EpisodeRecord rec = log.take();
    tracker.offer(rec);
    out.episodes.push_back(std::move(rec));
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  out.best = tracker.best();
  return out;
}

QLearningResult run_qlearning_seq_break(EpisodicEnv& env,
                                        const QConfig& config,
                                        SeededRng& rng) {
  config.validate();
  QLearningResult out{EpisodeRecord{},
                      QTable(discretize_action_space(
                          config.grid_resolution_fine)),
                      std::nullopt,
                      {}};
  FirstYearSearch search = first_year_search(env, config, rng, &out.table);
  const Action a_max = search.a_max;

  BestTracker tracker;
  const int phase2 = config.episodes_phase2;
  for (int e = 0; e < phase2 && can_play_episode(env); ++e) {
    const double epsilon =
        std::max(0.0, stretched_epsilon(e, phase2, config.epsilon0));
    begin_episode(env);
    EpisodeLog log;
    log.add(a_max, env.step(a_max).reward);
    play_learning_years(env, out.table, 2, epsilon, config.gamma, rng, log);
    EpisodeRecord rec = log.take();
    tracker.offer(rec);
    out.episodes.push_back(std::move(rec));
  }
  // Only reachable in first-slot mode when the probes used every episode.
  if (!tracker.has_value()) {
    for (const EpisodeRecord& rec : search.episodes) tracker.offer(rec);
  }
  if (!tracker.has_value()) {
    throw BudgetExhausted("no budget left for a single episode");
  }
  out.best = tracker.best();
  out.first_year = std::move(search);
  return out;
}

}  // namespace scarce_rl
