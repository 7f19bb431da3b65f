#pragma once

#include <string>
#include <vector>

namespace neoplanner {

struct StepResult {
  std::string observation;
  double raw_reward = 0.0;
  bool done = false;
  bool valid = true;
};

struct TaskDescription {
  std::string objective;
  std::string prior_description;
};

// A deterministic text environment: replaying the same actions from reset()
// must reproduce the same observations and rewards. Implementations report
// transport or protocol failures as EnvironmentError.
class EnvAdapter {
 public:
  virtual ~EnvAdapter() = default;

  // Starts a new episode and returns the initial observation.
  virtual std::string reset() = 0;
  virtual StepResult step(const std::string& action) = 0;
  virtual TaskDescription describe() = 0;
  virtual std::vector<std::string> accessible_objects() = 0;
  // Templates with OBJ placeholders, e.g. "use OBJ on OBJ".
  virtual std::vector<std::string> action_templates() = 0;
  virtual std::string inventory() = 0;
};

}  // namespace neoplanner
