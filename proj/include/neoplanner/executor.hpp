#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neoplanner/env.hpp"
#include "neoplanner/errors.hpp"
#include "neoplanner/state_graph.hpp"

namespace neoplanner {

// sign(r) * ln(1 + |r|): defined for zero and negative rewards.
double signed_log1p(double reward);

// One entry of the action-observation trace fed to the oracle.
struct ActionObservation {
  std::string action;
  std::string observation;

  friend bool operator==(const ActionObservation&, const ActionObservation&) = default;
};

// One entry of the action-state trace used to grow the state graph.
struct StepRecord {
  StateId source;
  std::string action;
  std::string observation;
  double raw_reward = 0.0;
  double transformed_reward = 0.0;
  bool valid = true;
  StateId state_id;  // INVALID for rejected actions
  std::string state_description;
  std::uint64_t action_capacity = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

Transition to_transition(const StepRecord& record);

struct ProbedState {
  StateId id;
  std::string description;
  std::uint64_t action_capacity = 0;
};

// Builds the latent state from a "look around" step plus the inventory; the
// probe is not part of any plan. Capacity is templates x accessible objects,
// or 0 when the adapter reports neither.
ProbedState probe_state(EnvAdapter& env);

// Current-state text shown to the oracle.
std::string render_state_description(const std::string& look,
                                     const std::vector<std::string>& objects,
                                     const std::string& inventory);

struct ExecutionResult {
  std::vector<ActionObservation> action_observations;
  std::vector<StepRecord> action_states;
  bool done = false;
  StateId final_state;

  friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

class ExecutionError : public Error {
 public:
  ExecutionError(const std::string& what, ExecutionResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const ExecutionResult& partial() const noexcept { return partial_; }

 private:
  ExecutionResult partial_;
};

// Runs `plan` from the latent state `start`, stopping once the environment
// reports done. Rejected actions are recorded with valid=false and leave the
// latent state where it was. Adapter failures surface as ExecutionError with
// everything recorded so far.
ExecutionResult execute_plan(EnvAdapter& env, const StateId& start,
                             std::span<const std::string> plan);

}  // namespace neoplanner
