#include "neoplanner/plan_select.hpp"

#include <set>

namespace neoplanner {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kLeaf: return "leaf";
    case StopReason::kExploreTrigger: return "explore_trigger";
    case StopReason::kLoop: return "loop";
    case StopReason::kAllChildrenInvalid: return "all_children_invalid";
  }
  return "unknown";
}

SelectedPlan select_plan(const StateGraph& graph, const StateId& start,
                         const ValueConfig& cfg) {
  SelectedPlan plan;
  const StateNode* parent = &graph.node(start);
  std::set<StateId> on_walk{start};

  while (true) {
    const auto& edges = graph.out_edges(parent->id);

    const GraphEdge* best = nullptr;
    const StateNode* best_child = nullptr;
    for (const auto& [action, edge] : edges) {
      if (edge.sink.is_invalid()) continue;
      const StateNode& child = graph.node(edge.sink);
      // Edges iterate in action order, so strict > keeps the smallest action.
      if (best == nullptr || child.augmented_value > best_child->augmented_value) {
        best = &edge;
        best_child = &child;
      }
    }

    if (best == nullptr) {
      plan.stop_reason =
          edges.empty() ? StopReason::kLeaf : StopReason::kAllChildrenInvalid;
      break;
    }

    const double k = cfg.k_source == KFactorSource::kParent
                         ? parent->exploration_factor
                         : best_child->exploration_factor;
    const double child_bound =
        best_child->value +
        k * exploration_bonus(cfg.exploration_c, graph.parent_visits(best_child->id),
                              best_child->visits);
    const double explore_here =
        default_explore_value(cfg, parent->exploration_factor, parent->visits);
    if (explore_here > child_bound) {
      plan.stop_reason = StopReason::kExploreTrigger;
      break;
    }
    if (on_walk.count(best_child->id)) {
      plan.stop_reason = StopReason::kLoop;
      break;
    }
    plan.actions.push_back(best->action);
    on_walk.insert(best_child->id);
    parent = best_child;
  }

  plan.terminal_state = parent->id;
  plan.terminal_description = parent->description;
  for (const auto& [action, edge] : graph.out_edges(parent->id)) {
    plan.avoided_actions.push_back(action);
  }
  return plan;
}

}  // namespace neoplanner
