#include <doctest.h>

#include <random>

#include "neoplanner/errors.hpp"
#include "neoplanner/plan_select.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace neoplanner;
using fixtures::edge;
using fixtures::node;
using fixtures::sid;

namespace {

void check_matches_literal(const StateGraph& g, const StateId& start, const ValueConfig& cfg) {
  const SelectedPlan plan = select_plan(g, start, cfg);
  const oracle::PlainPlan expected = oracle::literal_select(oracle::to_plain(g), start.str(), cfg);
  CHECK(plan.actions == expected.actions);
  CHECK(plan.terminal_state.str() == expected.terminal);
  CHECK(plan.avoided_actions == expected.avoided);
  CHECK(to_string(plan.stop_reason) == expected.reason);
}

}  // namespace

TEST_CASE("single node is a leaf") {
  StateGraph g = StateGraph::from_parts({}, {node("s0", 0.0)}, {});
  refresh_augmented_values(g, g.config());
  const SelectedPlan p = select_plan(g, sid("s0"), g.config());
  CHECK(p.actions.empty());
  CHECK(p.terminal_state == sid("s0"));
  CHECK(p.terminal_description == "state s0");
  CHECK(p.avoided_actions.empty());
  CHECK(p.stop_reason == StopReason::kLeaf);
}

TEST_CASE("unknown start is a lookup error") {
  StateGraph g;
  CHECK_THROWS_AS(select_plan(g, sid("nowhere"), g.config()), LookupError);
}

TEST_CASE("greedy walk commits to the best child and stops at its leaf") {
  ValueConfig cfg;
  cfg.default_value = 0.5;
  StateGraph g = StateGraph::from_parts(
      cfg, {node("s0", 0.0), node("A", 2.0), node("B", 1.0)},
      {edge("s0", "go a", "A", 0.0), edge("s0", "go b", "B", 0.0)});
  refresh_augmented_values(g, cfg);
  // Only parent is s0 with one visit, so N = 1 and the bonus vanishes.
  REQUIRE(g.node(sid("A")).augmented_value == 2.0);
  REQUIRE(g.node(sid("B")).augmented_value == 1.0);

  // Brute force: enumerate every path from s0 and keep the one a greedy
  // argmax walk would produce.
  std::vector<std::vector<std::string>> paths{{}};
  for (const auto& [a, e] : g.out_edges(sid("s0"))) paths.push_back({a});
  const auto best = *std::max_element(paths.begin() + 1, paths.end(), [&](auto& x, auto& y) {
    return g.node(g.out_edges(sid("s0")).at(x[0]).sink).augmented_value <
           g.node(g.out_edges(sid("s0")).at(y[0]).sink).augmented_value;
  });

  const SelectedPlan p = select_plan(g, sid("s0"), cfg);
  CHECK(p.actions == best);
  CHECK(p.actions == std::vector<std::string>{"go a"});
  CHECK(p.terminal_state == sid("A"));
  CHECK(p.stop_reason == StopReason::kLeaf);
  CHECK(p.avoided_actions.empty());
  check_matches_literal(g, sid("s0"), cfg);
}

TEST_CASE("explore trigger stops the walk and avoids every known action") {
  ValueConfig cfg;
  cfg.default_value = 0.5;
  StateGraph g = StateGraph::from_parts(
      cfg, {node("s0", 0.0), node("A", 0.2), node("B", 0.1), fixtures::invalid_node(cfg)},
      {edge("s0", "go a", "A", 0.0), edge("s0", "go b", "B", 0.0),
       edge("s0", "eat door", "INVALID", 0.0)});
  refresh_augmented_values(g, cfg);
  const SelectedPlan p = select_plan(g, sid("s0"), cfg);
  CHECK(p.actions.empty());
  CHECK(p.stop_reason == StopReason::kExploreTrigger);
  CHECK(p.avoided_actions == std::vector<std::string>{"eat door", "go a", "go b"});
  check_matches_literal(g, sid("s0"), cfg);
}

TEST_CASE("loop detection") {
  ValueConfig cfg;
  cfg.default_value = -10.0;
  StateGraph g = StateGraph::from_parts(cfg, {node("s0", 1.0), node("s1", 2.0)},
                                        {edge("s0", "go s1", "s1", 0.0),
                                         edge("s1", "go s0", "s0", 0.0)});
  refresh_augmented_values(g, cfg);
  const SelectedPlan p = select_plan(g, sid("s0"), cfg);
  CHECK(p.actions == std::vector<std::string>{"go s1"});
  CHECK(p.terminal_state == sid("s1"));
  CHECK(p.stop_reason == StopReason::kLoop);
  CHECK(p.avoided_actions == std::vector<std::string>{"go s0"});
  check_matches_literal(g, sid("s0"), cfg);

  // Self-loop, e.g. "look around".
  StateGraph self = StateGraph::from_parts(cfg, {node("s0", 1.0)},
                                           {edge("s0", "look around", "s0", 0.0)});
  refresh_augmented_values(self, cfg);
  const SelectedPlan q = select_plan(self, sid("s0"), cfg);
  CHECK(q.actions.empty());
  CHECK(q.stop_reason == StopReason::kLoop);
}

TEST_CASE("all children invalid") {
  ValueConfig cfg;
  StateGraph g = StateGraph::from_parts(
      cfg, {node("s0", 0.0), fixtures::invalid_node(cfg)},
      {edge("s0", "eat door", "INVALID", 0.0), edge("s0", "fly", "INVALID", 0.0)});
  refresh_augmented_values(g, cfg);
  const SelectedPlan p = select_plan(g, sid("s0"), cfg);
  CHECK(p.actions.empty());
  CHECK(p.stop_reason == StopReason::kAllChildrenInvalid);
  CHECK(p.avoided_actions == std::vector<std::string>{"eat door", "fly"});
}

TEST_CASE("ties go to the smallest action text") {
  ValueConfig cfg;
  cfg.default_value = -10.0;
  StateGraph g = StateGraph::from_parts(
      cfg, {node("s0", 0.0), node("A", 1.0), node("B", 1.0)},
      {edge("s0", "open b", "B", 0.0), edge("s0", "go a", "A", 0.0)});
  refresh_augmented_values(g, cfg);
  CHECK(select_plan(g, sid("s0"), cfg).actions == std::vector<std::string>{"go a"});
}

TEST_CASE("equal values: the least visited child wins") {
  std::mt19937_64 rng(3);
  ValueConfig cfg;
  cfg.default_value = -100.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<StateNode> nodes{node("p", 0.5, 5)};
    std::vector<GraphEdge> edges;
    std::uniform_int_distribution<int> visits(1, 30);
    std::uint64_t fewest = 1000;
    std::string expected;
    for (int c = 0; c < 5; ++c) {
      const std::string name = "c" + std::to_string(c);
      std::uint64_t v = visits(rng);
      while (v == fewest) v = visits(rng);
      nodes.push_back(node(name, 0.5, v));
      edges.push_back(edge("p", "go " + name, name, 0.0));
      if (v < fewest) {
        fewest = v;
        expected = "go " + name;
      }
    }
    StateGraph g = StateGraph::from_parts(cfg, nodes, edges);
    refresh_augmented_values(g, cfg);
    const SelectedPlan plan = select_plan(g, sid("p"), cfg);
    REQUIRE_FALSE(plan.actions.empty());
    CHECK(plan.actions.front() == expected);
  }
}

TEST_CASE("random graphs: literal equivalence, termination, determinism, scaling") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> vdef(-0.5, 1.5);
  for (int trial = 0; trial < 300; ++trial) {
    ValueConfig cfg;
    cfg.default_value = vdef(rng);
    cfg.k_source = trial % 4 == 0 ? KFactorSource::kChild : KFactorSource::kParent;
    StateGraph g = fixtures::random_graph(rng, 6, cfg);
    refresh_augmented_values(g, cfg);
    for (const auto& [id, n] : g.nodes()) {
      if (id.is_invalid()) continue;
      check_matches_literal(g, id, cfg);
      const SelectedPlan p = select_plan(g, id, cfg);
      CHECK(p.actions.size() <= g.node_count());
      CHECK(select_plan(g, id, cfg) == p);
      for (const auto& a : p.avoided_actions) CHECK(g.node(p.terminal_state).actions_tried.count(a));

      // Replays along existing valid edges.
      StateId at = id;
      for (const auto& a : p.actions) {
        const GraphEdge& e = g.out_edges(at).at(a);
        CHECK_FALSE(e.sink.is_invalid());
        at = e.sink;
      }
      CHECK(at == p.terminal_state);
    }

    // Power-of-two scaling keeps every comparison exact.
    const double scale = trial % 2 ? 4.0 : 0.5;
    ValueConfig scaled_cfg = cfg;
    scaled_cfg.default_value *= scale;
    scaled_cfg.exploration_c *= scale;
    StateGraph scaled = g;
    scaled.set_config(scaled_cfg);
    for (const auto& [id, n] : g.nodes()) scaled.set_value(id, n.value * scale);
    refresh_augmented_values(scaled, scaled_cfg);
    for (const auto& [id, n] : g.nodes()) {
      if (id.is_invalid()) continue;
      const SelectedPlan a = select_plan(g, id, cfg);
      const SelectedPlan b = select_plan(scaled, id, scaled_cfg);
      CHECK(a.actions == b.actions);
      CHECK(a.stop_reason == b.stop_reason);
    }
  }
}
