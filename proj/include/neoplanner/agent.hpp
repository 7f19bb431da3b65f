#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "neoplanner/env.hpp"
#include "neoplanner/executor.hpp"
#include "neoplanner/oracle.hpp"
#include "neoplanner/plan_select.hpp"
#include "neoplanner/state_graph.hpp"

namespace neoplanner {

struct EpisodeConfig {
  int rounds_per_episode = 5;
  int max_episodes = 20;
  double sigma = 0.3;
  double goal_reward = 1.0;
  int oracle_max_retries = 2;

  void validate() const;
};

struct Feedback {
  double raw_total = 0.0;
  double transformed_total = 0.0;
  std::string text;
};

// Feedback ladder over the episode's raw reward as a fraction of the goal:
// nothing, below half, at least half, solved.
Feedback get_feedback(std::span<const StepRecord> action_states, double goal_reward);

struct RoundTrace {
  SelectedPlan selection;
  std::vector<std::string> oracle_plan;
  bool exploration_objective = false;
  std::vector<StepRecord> steps;

  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

struct EpisodeReport {
  std::vector<RoundTrace> rounds;
  double cumulative_raw_reward = 0.0;
  double cumulative_transformed_reward = 0.0;
  std::string feedback;
  std::uint64_t interactions = 0;  // plan actions sent to the environment
  bool done = false;

  friend bool operator==(const EpisodeReport&, const EpisodeReport&) = default;
};

struct RunReport {
  std::vector<EpisodeReport> episodes;
  std::uint64_t total_interactions = 0;
  bool solved = false;
  std::string error;  // set when a hard failure aborted the run

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct AgentHooks {
  // After every selection, before the oracle is asked.
  std::function<void(const StateId& from, const SelectedPlan&, const StateGraph&)>
      on_selection;
  // After the graph absorbed a round; the natural place to checkpoint.
  std::function<void(int episode, int round, const RoundTrace&, const StateGraph&,
                     const Learnings&)>
      on_round_complete;
  std::function<void(int episode, const EpisodeReport&, const Learnings&)>
      on_episode_complete;
};

// Action name of the edge linking ROOT to the post-reset state.
inline constexpr std::string_view kStartAction = "start";

// Episodes of graph-guided, oracle-completed plans until the goal is reached
// or max_episodes run out. Each episode resets the environment, runs up to
// rounds_per_episode select/generate/execute/learn rounds, then asks for
// feedback and updates `learnings`. Environment or oracle transport failures
// stop the run; the report carries the message and the graph keeps every
// completed step.
RunReport solve(EnvAdapter& env, StateGraph& graph, OracleClient& oracle,
                Learnings& learnings, const EpisodeConfig& cfg, std::mt19937_64& rng,
                const AgentHooks& hooks = {});

}  // namespace neoplanner
