#include "neoplanner/state_graph.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "neoplanner/errors.hpp"

namespace neoplanner {

void ValueConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must be in (0, 1)");
  if (!(exploration_c > 0.0)) fail("exploration constant C must be positive");
  if (!std::isfinite(default_value)) fail("default value must be finite");
  if (!std::isfinite(invalid_value)) fail("invalid value must be finite");
  if (!(k_exponent > 1.0)) fail("exploration factor exponent must be > 1");
  if (max_sweeps < 1) fail("max_sweeps must be positive");
  if (!(convergence_eps > 0.0)) fail("convergence_eps must be positive");
}

double exploration_bonus(double c, std::uint64_t parent_visits,
                         std::uint64_t visits) {
  const double log_n =
      parent_visits > 0 ? std::log(static_cast<double>(parent_visits)) : 0.0;
  const double n = static_cast<double>(std::max<std::uint64_t>(visits, 1));
  return c * std::sqrt(std::max(0.0, log_n) / n);
}

double exploration_factor(std::uint64_t capacity, std::size_t tried,
                          double exponent) {
  if (capacity == 0) return 1.0;
  const double untried =
      std::max(0.0, static_cast<double>(capacity) - static_cast<double>(tried));
  return std::pow(untried / static_cast<double>(capacity), exponent);
}

double default_explore_value(const ValueConfig& cfg, double k_factor,
                             std::uint64_t visits) {
  const double log_n = visits > 0 ? std::log(static_cast<double>(visits)) : 0.0;
  return cfg.default_value +
         k_factor * cfg.exploration_c * std::sqrt(std::max(0.0, log_n));
}

StateGraph::StateGraph(ValueConfig config) : config_(config) {
  config_.validate();
}

void StateGraph::set_config(const ValueConfig& config) {
  config.validate();
  config_ = config;
}

std::size_t StateGraph::edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, edges] : out_) n += edges.size();
  return n;
}

std::size_t StateGraph::invalid_edge_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, edges] : out_) {
    for (const auto& [action, e] : edges) n += e.sink.is_invalid() ? 1 : 0;
  }
  return n;
}

const StateNode* StateGraph::find(const StateId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const StateNode& StateGraph::node(const StateId& id) const {
  if (const StateNode* n = find(id)) return *n;
  throw LookupError("state not in graph: " + id.str());
}

StateNode& StateGraph::mutable_node(const StateId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw LookupError("state not in graph: " + id.str());
  return it->second;
}

const StateGraph::EdgeMap& StateGraph::out_edges(const StateId& id) const {
  static const EdgeMap kEmpty;
  auto it = out_.find(id);
  return it == out_.end() ? kEmpty : it->second;
}

const std::set<StateId>& StateGraph::parents(const StateId& id) const {
  static const std::set<StateId> kEmpty;
  auto it = parents_.find(id);
  return it == parents_.end() ? kEmpty : it->second;
}

std::uint64_t StateGraph::parent_visits(const StateId& id) const {
  std::uint64_t total = 0;
  for (const StateId& p : parents(id)) {
    if (const StateNode* n = find(p)) total += n->visits;
  }
  return total;
}

std::vector<GraphEdge> StateGraph::edges() const {
  std::vector<GraphEdge> all;
  for (const auto& [id, edges] : out_) {
    for (const auto& [action, e] : edges) all.push_back(e);
  }
  return all;
}

StateNode& StateGraph::ensure_node(const StateId& id,
                                   const std::string& description) {
  auto [it, inserted] = nodes_.try_emplace(id);
  if (inserted) {
    it->second.id = id;
    it->second.description = description;
    it->second.value =
        id.is_invalid() ? config_.invalid_value : config_.default_value;
  }
  return it->second;
}

void StateGraph::upsert_transition(const Transition& t) {
  if (t.source.empty() || t.sink.empty()) {
    throw GraphStructureError("transition with empty state id");
  }
  if (t.source.is_invalid()) {
    throw GraphStructureError("the invalid sink cannot be an edge source");
  }
  if (t.sink.is_root()) {
    throw GraphStructureError("ROOT cannot be an edge sink");
  }
  if (t.source.is_root()) {
    ensure_node(t.source, "ROOT").visits += 1;
  } else if (!contains(t.source)) {
    throw GraphStructureError("unknown source state " + t.source.str() +
                              " for action '" + t.action + "'");
  }

  StateNode& sink = ensure_node(t.sink, t.sink.is_invalid() ? "INVALID"
                                                            : t.sink_description);
  sink.visits += 1;
  if (!t.sink.is_reserved()) {
    if (sink.description.empty()) sink.description = t.sink_description;
    if (t.sink_action_capacity > 0) {
      sink.action_capacity =
          std::max<std::uint64_t>(t.sink_action_capacity, sink.actions_tried.size());
    }
  }

  EdgeMap& edges = out_[t.source];
  auto [it, inserted] = edges.try_emplace(t.action);
  GraphEdge& edge = it->second;
  if (inserted) {
    edge = GraphEdge{t.action, t.reward, t.source, t.sink, 1};
  } else {
    edge.traversals += 1;
    if (edge.reward != t.reward) {
      spdlog::warn("environment determinism: '{}' from {} rewarded {} before, {} now",
                   t.action, t.source.str().substr(0, 12), edge.reward, t.reward);
      edge.reward = t.reward;
    }
    if (edge.sink != t.sink) {
      spdlog::warn("environment determinism: '{}' from {} changed its sink",
                   t.action, t.source.str().substr(0, 12));
      const StateId old_sink = edge.sink;
      edge.sink = t.sink;
      const bool still_parent = std::any_of(
          edges.begin(), edges.end(),
          [&](const auto& kv) { return kv.second.sink == old_sink; });
      if (!still_parent) parents_[old_sink].erase(t.source);
    }
  }
  parents_[t.sink].insert(t.source);

  StateNode& source = mutable_node(t.source);
  source.actions_tried.insert(t.action);
  if (source.action_capacity > 0) {
    source.action_capacity = std::max<std::uint64_t>(
        source.action_capacity, source.actions_tried.size());
  }
}

void StateGraph::set_value(const StateId& id, double value) {
  mutable_node(id).value = value;
}

void StateGraph::set_visits(const StateId& id, std::uint64_t visits) {
  mutable_node(id).visits = visits;
}

void StateGraph::set_action_capacity(const StateId& id, std::uint64_t capacity) {
  mutable_node(id).action_capacity = capacity;
}

StateGraph StateGraph::from_parts(ValueConfig config,
                                  std::vector<StateNode> nodes,
                                  std::vector<GraphEdge> edges) {
  StateGraph g(config);
  for (StateNode& n : nodes) {
    const StateId id = n.id;
    if (!g.nodes_.emplace(id, std::move(n)).second) {
      throw GraphStructureError("duplicate node " + id.str());
    }
  }
  for (GraphEdge& e : edges) {
    if (!g.contains(e.source) || !g.contains(e.sink)) {
      throw GraphStructureError("edge '" + e.action + "' references a missing node");
    }
    if (e.source.is_invalid()) {
      throw GraphStructureError("edge '" + e.action + "' leaves the invalid sink");
    }
    if (e.traversals == 0) {
      throw GraphStructureError("edge '" + e.action + "' has zero traversals");
    }
    g.parents_[e.sink].insert(e.source);
    const StateId source = e.source;
    const std::string action = e.action;
    if (!g.out_[source].emplace(action, std::move(e)).second) {
      throw GraphStructureError("duplicate edge '" + action + "' from " +
                                source.str());
    }
  }
  return g;
}

bool operator==(const StateGraph& a, const StateGraph& b) {
  return a.config_ == b.config_ && a.nodes_ == b.nodes_ && a.out_ == b.out_;
}

SweepReport value_sweep(StateGraph& graph, const ValueConfig& cfg) {
  SweepReport report;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double total_change = 0.0;
    std::size_t swept = 0;
    for (auto& [id, node] : graph.nodes_) {
      if (id.is_invalid()) continue;
      const double before = node.value;
      for (const auto& [action, edge] : graph.out_edges(id)) {
        if (edge.sink.is_invalid()) continue;
        const double child_value = graph.nodes_.at(edge.sink).value;
        node.value += cfg.alpha * (edge.reward + cfg.gamma * child_value - node.value);
      }
      total_change += std::abs(node.value - before);
      ++swept;
    }
    report.sweeps_run = sweep + 1;
    report.final_mean_abs_delta = swept ? total_change / static_cast<double>(swept) : 0.0;
    if (report.final_mean_abs_delta < cfg.convergence_eps) break;
  }
  return report;
}

void refresh_augmented_values(StateGraph& graph, const ValueConfig& cfg) {
  for (auto& [id, node] : graph.nodes_) {
    node.augmented_value =
        node.value + exploration_bonus(cfg.exploration_c, graph.parent_visits(id),
                                       node.visits);
    node.exploration_factor = exploration_factor(
        node.action_capacity, node.actions_tried.size(), cfg.k_exponent);
  }
}

}  // namespace neoplanner
