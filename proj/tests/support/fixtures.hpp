#pragma once

#include <random>
#include <string>
#include <vector>

#include "neoplanner/state_graph.hpp"
#include "neoplanner/state_id.hpp"

namespace fixtures {

inline neoplanner::StateId sid(const std::string& name) {
  return neoplanner::encode_state("state " + name, "");
}

inline neoplanner::StateNode node(const std::string& name, double value,
                                  std::uint64_t visits = 1) {
  neoplanner::StateNode n;
  n.id = sid(name);
  n.description = "state " + name;
  n.value = value;
  n.visits = visits;
  return n;
}

inline neoplanner::StateNode invalid_node(const neoplanner::ValueConfig& cfg) {
  neoplanner::StateNode n;
  n.id = neoplanner::StateId::invalid();
  n.description = "INVALID";
  n.value = cfg.invalid_value;
  n.visits = 1;
  return n;
}

inline neoplanner::GraphEdge edge(const std::string& from, const std::string& action,
                                  const std::string& to, double reward) {
  return {action, reward, sid(from), to == "INVALID" ? neoplanner::StateId::invalid() : sid(to),
          1};
}

// A -> B -> C with rewards 0 then 1; every value starts at `init`.
inline neoplanner::StateGraph chain(const neoplanner::ValueConfig& cfg, double init = 0.0) {
  return neoplanner::StateGraph::from_parts(
      cfg, {node("A", init), node("B", init), node("C", init)},
      {edge("A", "go b", "B", 0.0), edge("B", "go c", "C", 1.0)});
}

// Random graph on at most `max_nodes` data nodes, grown through upserts from
// ROOT so every structural invariant holds. Values, visits and capacities are
// then scrambled.
inline neoplanner::StateGraph random_graph(std::mt19937_64& rng, int max_nodes,
                                           const neoplanner::ValueConfig& cfg,
                                           bool allow_cycles = true) {
  using namespace neoplanner;
  std::uniform_int_distribution<int> count(1, max_nodes);
  const int n = count(rng);
  StateGraph g(cfg);
  std::vector<StateId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(sid("r" + std::to_string(i)));
  const std::vector<std::string> actions{"go a", "go b", "open c", "take d", "eat e"};
  std::uniform_real_distribution<double> reward(-0.5, 1.0);
  std::uniform_int_distribution<int> pick_action(0, int(actions.size()) - 1);
  std::uniform_int_distribution<int> pick_cap(0, 8);
  std::bernoulli_distribution invalid(0.15);

  g.upsert_transition({StateId::root(), "start", ids[0], 0.0, "state r0", 6});
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick_src(0, i - 1);
    const int src = pick_src(rng);
    g.upsert_transition({ids[src], actions[pick_action(rng)] + std::to_string(i), ids[i],
                         reward(rng), "state r" + std::to_string(i),
                         std::uint64_t(pick_cap(rng))});
  }
  std::uniform_int_distribution<int> extra(0, 2 * n);
  for (int k = extra(rng); k > 0; --k) {
    std::uniform_int_distribution<int> any(0, n - 1);
    int src = any(rng);
    int dst = any(rng);
    if (!allow_cycles && dst <= src) continue;
    const std::string action = actions[pick_action(rng)];
    if (g.out_edges(ids[src]).count(action)) continue;
    g.upsert_transition({ids[src], action, invalid(rng) ? StateId::invalid() : ids[dst],
                         reward(rng), "state r" + std::to_string(dst),
                         std::uint64_t(pick_cap(rng))});
  }
  std::uniform_real_distribution<double> value(-1.0, 2.0);
  std::uniform_int_distribution<int> visits(1, 12);
  for (const StateId& id : ids) {
    g.set_value(id, value(rng));
    g.set_visits(id, visits(rng));
  }
  return g;
}

}  // namespace fixtures
