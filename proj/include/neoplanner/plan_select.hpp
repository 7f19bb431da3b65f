#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "neoplanner/state_graph.hpp"

namespace neoplanner {

enum class StopReason { kLeaf, kExploreTrigger, kLoop, kAllChildrenInvalid };

std::string_view to_string(StopReason reason);

struct SelectedPlan {
  std::vector<std::string> actions;  // committed prefix, replayable from start
  StateId terminal_state;
  std::string terminal_description;
  // Actions of every known edge out of terminal_state (including edges into
  // the invalid sink), sorted by action text.
  std::vector<std::string> avoided_actions;
  StopReason stop_reason = StopReason::kLeaf;

  friend bool operator==(const SelectedPlan&, const SelectedPlan&) = default;
};

// Greedy walk from `start` over valid edges, always taking the child with the
// largest augmented value (ties: smallest action text). The walk stops at a
// node without valid children, when the parent's default-explore value beats
// the chosen child's K-scaled bound, or when the next step would revisit a
// state already on the walk. Reads the derived values stored by
// refresh_augmented_values(). Throws LookupError if `start` is unknown.
SelectedPlan select_plan(const StateGraph& graph, const StateId& start,
                         const ValueConfig& cfg);

}  // namespace neoplanner
