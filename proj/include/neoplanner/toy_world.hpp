#pragma once

#include <compare>
#include <string>
#include <vector>

#include "neoplanner/env.hpp"

namespace neoplanner {

// "KeyDoor": hallway, kitchen and a locked pantry. The key sits in a closed
// kitchen drawer; the task is to unlock and open the pantry door.
//
// Rewards: first kitchen entry of an episode +0.25, picking up the key +0.25,
// opening the unlocked pantry door +0.5. The episode is done at 1.0.
class ToyWorld final : public EnvAdapter {
 public:
  enum class Room { kHallway, kKitchen, kPantry };

  struct State {
    Room room = Room::kHallway;
    bool drawer_open = false;
    bool key_carried = false;
    bool pantry_unlocked = false;
    bool pantry_open = false;
    bool kitchen_entered = false;
    double cumulative_reward = 0.0;
    bool done = false;

    friend auto operator<=>(const State&, const State&) = default;
  };

  ToyWorld() = default;

  std::string reset() override;
  StepResult step(const std::string& action) override;
  TaskDescription describe() override;
  std::vector<std::string> accessible_objects() override;
  std::vector<std::string> action_templates() override;
  std::string inventory() override;

  const State& state() const noexcept { return state_; }
  std::string look() const;
  std::vector<std::string> objects() const;

 private:
  State state_;
};

}  // namespace neoplanner
