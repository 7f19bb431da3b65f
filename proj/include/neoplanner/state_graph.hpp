#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "neoplanner/state_id.hpp"

namespace neoplanner {

// Which state's exploration factor scales the child bonus when comparing a
// child against the parent's default-explore value.
enum class KFactorSource { kParent, kChild };

struct ValueConfig {
  double alpha = 0.1;             // TD step size, (0, 1]
  double gamma = 0.95;            // decay, (0, 1)
  double exploration_c = 1.4142135623730951;
  double default_value = 0.1;     // value of a state nobody has backed up yet
  double invalid_value = -1.0;    // value carried by the invalid sink
  double k_exponent = 2.0;        // non-linearity of the exploration factor, > 1
  int max_sweeps = 200;
  double convergence_eps = 1e-4;  // mean |dV| per sweep below which we stop
  KFactorSource k_source = KFactorSource::kParent;

  // Throws ConfigError naming the first violated bound.
  void validate() const;

  friend bool operator==(const ValueConfig&, const ValueConfig&) = default;
};

struct StateNode {
  StateId id;
  std::string description;
  double value = 0.0;
  std::uint64_t visits = 0;
  // Total actions available from this state; 0 means not yet known.
  std::uint64_t action_capacity = 0;
  std::set<std::string> actions_tried;

  // Derived by refresh_augmented_values(); not persisted and ignored by ==.
  double augmented_value = 0.0;
  double exploration_factor = 1.0;

  friend bool operator==(const StateNode& a, const StateNode& b) {
    return a.id == b.id && a.description == b.description && a.value == b.value &&
           a.visits == b.visits && a.action_capacity == b.action_capacity &&
           a.actions_tried == b.actions_tried;
  }
};

struct GraphEdge {
  std::string action;
  double reward = 0.0;  // already log-transformed
  StateId source;
  StateId sink;
  std::uint64_t traversals = 1;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// One observed step, as consumed by StateGraph::upsert_transition.
struct Transition {
  StateId source;
  std::string action;
  StateId sink;  // StateId::invalid() when the step was rejected
  double reward = 0.0;
  std::string sink_description;
  std::uint64_t sink_action_capacity = 0;
};

struct SweepReport {
  int sweeps_run = 0;
  double final_mean_abs_delta = 0.0;
};

class StateGraph {
 public:
  using EdgeMap = std::map<std::string, GraphEdge>;  // keyed by action text

  explicit StateGraph(ValueConfig config = {});

  const ValueConfig& config() const noexcept { return config_; }
  void set_config(const ValueConfig& config);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept;
  std::size_t invalid_edge_count() const noexcept;

  bool contains(const StateId& id) const { return nodes_.count(id) != 0; }
  const StateNode* find(const StateId& id) const;
  // Throws LookupError when absent.
  const StateNode& node(const StateId& id) const;
  const std::map<StateId, StateNode>& nodes() const noexcept { return nodes_; }

  // Outgoing edges of `id`, ordered by action text. Empty for unknown ids.
  const EdgeMap& out_edges(const StateId& id) const;
  const std::set<StateId>& parents(const StateId& id) const;
  // Sum of visits over the distinct parents of `id` (N in the UCB bonus).
  std::uint64_t parent_visits(const StateId& id) const;
  std::vector<GraphEdge> edges() const;

  // Records one step. ROOT is always an acceptable source; any other source
  // must already be in the graph. Throws GraphStructureError otherwise.
  void upsert_transition(const Transition& t);

  // Test and fixture hooks. Throw LookupError on unknown ids.
  void set_value(const StateId& id, double value);
  void set_visits(const StateId& id, std::uint64_t visits);
  void set_action_capacity(const StateId& id, std::uint64_t capacity);

  // Rebuilds a graph from already-validated parts (used by the loader).
  static StateGraph from_parts(ValueConfig config, std::vector<StateNode> nodes,
                               std::vector<GraphEdge> edges);

  friend bool operator==(const StateGraph& a, const StateGraph& b);

 private:
  friend SweepReport value_sweep(StateGraph& graph, const ValueConfig& cfg);
  friend void refresh_augmented_values(StateGraph& graph,
                                       const ValueConfig& cfg);

  StateNode& ensure_node(const StateId& id, const std::string& description);
  StateNode& mutable_node(const StateId& id);

  ValueConfig config_;
  std::map<StateId, StateNode> nodes_;
  std::map<StateId, EdgeMap> out_;
  std::map<StateId, std::set<StateId>> parents_;
};

// TD(0) backups: each sweep visits every non-INVALID node in id order and
// applies V(p) += alpha * (r + gamma * V(c) - V(p)) once per valid child, in
// action-text order. Stops after max_sweeps or once the mean absolute change
// over the swept nodes drops below convergence_eps.
SweepReport value_sweep(StateGraph& graph, const ValueConfig& cfg);

// Recomputes the UCB-augmented value and exploration factor of every node.
void refresh_augmented_values(StateGraph& graph, const ValueConfig& cfg);

// c * sqrt(max(0, ln N) / n). n must be positive.
double exploration_bonus(double c, std::uint64_t parent_visits,
                         std::uint64_t visits);

// ((capacity - tried) / capacity)^exponent, 1 for unknown capacity, never
// negative.
double exploration_factor(std::uint64_t capacity, std::size_t tried,
                          double exponent);

// Default-explore value of a state: V_default + K * c * sqrt(max(0, ln n)).
double default_explore_value(const ValueConfig& cfg, double k_factor,
                             std::uint64_t visits);

}  // namespace neoplanner
