#include "neoplanner/executor.hpp"

#include <cmath>

namespace neoplanner {

double signed_log1p(double reward) {
  if (reward == 0.0) return 0.0;
  return std::copysign(std::log1p(std::abs(reward)), reward);
}

Transition to_transition(const StepRecord& r) {
  return Transition{r.source,
                    r.action,
                    r.valid ? r.state_id : StateId::invalid(),
                    r.transformed_reward,
                    r.state_description,
                    r.action_capacity};
}

std::string render_state_description(const std::string& look,
                                     const std::vector<std::string>& objects,
                                     const std::string& inventory) {
  std::string out = "Currently you see the following things:\n\n" + look;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += "\nCurrently you can access the following objects:\n\n[";
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (i) out += ", ";
    out += "'" + objects[i] + "'";
  }
  out += "]\n\nThe agent has following things in its inventory.\n\n" + inventory;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

ProbedState probe_state(EnvAdapter& env) {
  const StepResult look = env.step("look around");
  if (!look.valid) throw EnvironmentError("environment rejected 'look around'");
  if (canonicalize_text(look.observation).empty()) {
    throw EnvironmentError("environment returned an empty 'look around'");
  }
  const std::string inv = env.inventory();
  const std::vector<std::string> objects = env.accessible_objects();
  const std::size_t templates = env.action_templates().size();
  return ProbedState{encode_state(look.observation, inv),
                     render_state_description(look.observation, objects, inv),
                     static_cast<std::uint64_t>(templates * objects.size())};
}

ExecutionResult execute_plan(EnvAdapter& env, const StateId& start,
                             std::span<const std::string> plan) {
  ExecutionResult result;
  result.final_state = start;
  for (const std::string& action : plan) {
    try {
      const StepResult step = env.step(action);
      StepRecord rec;
      rec.source = result.final_state;
      rec.action = action;
      rec.observation = step.observation;
      rec.raw_reward = step.raw_reward;
      rec.transformed_reward = signed_log1p(step.raw_reward);
      rec.valid = step.valid;
      if (step.valid) {
        const ProbedState state = probe_state(env);
        rec.state_id = state.id;
        rec.state_description = state.description;
        rec.action_capacity = state.action_capacity;
        result.final_state = state.id;
      } else {
        rec.state_id = StateId::invalid();
      }
      result.action_observations.push_back({action, step.observation});
      result.action_states.push_back(std::move(rec));
      if (step.done) {
        result.done = true;
        break;
      }
    } catch (const EnvironmentError& e) {
      throw ExecutionError(std::string("executing '") + action + "': " + e.what(),
                           std::move(result));
    }
  }
  return result;
}

}  // namespace neoplanner
