#include <doctest.h>

#include <map>

#include "neoplanner/errors.hpp"
#include "neoplanner/oracle_client.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"

using namespace neoplanner;
using scenarios::kCanonicalPlan;

namespace {

StepRecord step_with_reward(double raw) {
  StepRecord r;
  r.raw_reward = raw;
  r.transformed_reward = signed_log1p(raw);
  return r;
}

}  // namespace

TEST_CASE("feedback ladder") {
  auto text = [](std::vector<double> rewards) {
    std::vector<StepRecord> steps;
    for (double r : rewards) steps.push_back(step_with_reward(r));
    return get_feedback(steps, 1.0).text;
  };
  CHECK(text({}).find("could not make any progress") != std::string::npos);
  CHECK(text({0.0, 0.0}).find("could not make any progress") != std::string::npos);
  CHECK(text({0.25}) ==
        "The agent performed poorly and made some progress but not enough to solve the task.");
  CHECK(text({0.25, 0.25}).find("significant progress") != std::string::npos);
  CHECK(text({0.25, 0.25, 0.25}).find("significant progress") != std::string::npos);
  CHECK(text({0.25, 0.25, 0.5}).find("successfully solved") != std::string::npos);

  std::vector<StepRecord> steps{step_with_reward(0.25), step_with_reward(0.5)};
  const Feedback f = get_feedback(steps, 1.0);
  CHECK(f.raw_total == 0.75);
  CHECK(f.transformed_total == doctest::Approx(std::log(1.25) + std::log(1.5)));
}

TEST_CASE("episode config validation") {
  EpisodeConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.sigma = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.rounds_per_episode = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.oracle_max_retries = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("canonical mock solves in the first episode") {
  const oracle::BfsResult bfs = oracle::toy_bfs();
  REQUIRE(bfs.shortest_solution);
  ScriptedOracle mock({scenarios::canonical_answer()}, {"[\"key opens pantry door\"]"});
  EpisodeConfig cfg;
  auto out = scenarios::run_toy(mock, cfg);

  CHECK(out.report.solved);
  CHECK(out.report.error.empty());
  REQUIRE(out.report.episodes.size() == 1);
  const EpisodeReport& ep = out.report.episodes[0];
  CHECK(ep.done);
  CHECK(ep.cumulative_raw_reward == doctest::Approx(1.0));
  CHECK(ep.interactions == bfs.shortest_solution->size());
  CHECK(out.report.total_interactions == 6);
  CHECK(ep.rounds.size() == 1);
  CHECK(ep.rounds[0].selection.stop_reason == StopReason::kLeaf);
  CHECK(ep.rounds[0].selection.actions.empty());
  CHECK(ep.feedback.find("successfully solved") != std::string::npos);
  CHECK(mock.planner_calls() == 1);
  CHECK(mock.learner_calls() == 1);  // the learner also runs after a solved episode
  CHECK(out.learnings.axioms == std::vector<std::string>{"key opens pantry door"});
  CHECK(scenarios::graph_holds_solution(out.graph));
  CHECK(out.hygiene.violations.empty());
  // ROOT, start, six successors
  CHECK(out.graph.node_count() == 8);
}

TEST_CASE("noisy mock still solves") {
  ScriptedOracle mock(scenarios::noisy_script(6));
  EpisodeConfig cfg;
  cfg.oracle_max_retries = 2;
  auto out = scenarios::run_toy(mock, cfg);
  CHECK(out.report.solved);
  REQUIRE(out.report.episodes.size() == 1);
  const EpisodeReport& ep = out.report.episodes[0];
  REQUIRE(ep.rounds.size() == 3);
  CHECK(ep.rounds[0].oracle_plan.empty());
  CHECK(ep.rounds[0].steps.empty());
  CHECK(ep.rounds[1].oracle_plan.empty());
  CHECK(ep.rounds[2].oracle_plan == kCanonicalPlan);
  CHECK(mock.planner_calls() == 7);
  CHECK(ep.cumulative_raw_reward == doctest::Approx(1.0));
  CHECK(scenarios::graph_holds_solution(out.graph));
  CHECK(out.hygiene.violations.empty());
}

TEST_CASE("a mute oracle never solves but the graph stays consistent") {
  ScriptedOracle mock({"[]"});
  EpisodeConfig cfg;
  cfg.max_episodes = 4;
  cfg.rounds_per_episode = 3;
  auto out = scenarios::run_toy(mock, cfg);
  CHECK_FALSE(out.report.solved);
  CHECK(out.report.error.empty());
  CHECK(out.report.episodes.size() == 4);
  CHECK(out.report.total_interactions == 0);
  CHECK(out.graph.node_count() == 2);
  for (const auto& [id, n] : out.graph.nodes()) CHECK(n.visits >= 1);
  CHECK(out.graph.node(StateId::root()).visits == 4);
  CHECK(mock.learner_calls() == 0);  // nothing to learn from an empty trace
}

TEST_CASE("random planner: accounting, monotonic graph, hygiene") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    CAPTURE(seed);
    std::mt19937_64 planner_rng(seed * 7919);
    FunctionOracle mock = scenarios::random_planner(planner_rng);
    EpisodeConfig cfg;
    cfg.max_episodes = 6;
    cfg.rounds_per_episode = 4;

    ToyWorld world;
    StateGraph graph;
    Learnings learnings;
    std::mt19937_64 rng(seed);
    scenarios::HygieneLog hygiene;
    AgentHooks hooks = hygiene.hooks();

    std::size_t last_nodes = 0, last_edges = 0;
    std::map<StateId, std::uint64_t> last_visits;
    std::map<std::pair<StateId, std::string>, std::uint64_t> last_traversals;
    bool monotone = true;
    hooks.on_round_complete = [&](int, int, const RoundTrace&, const StateGraph& g,
                                  const Learnings&) {
      monotone = monotone && g.node_count() >= last_nodes && g.edge_count() >= last_edges;
      for (const auto& [id, v] : last_visits) {
        monotone = monotone && g.contains(id) && g.node(id).visits >= v;
      }
      for (const auto& [key, t] : last_traversals) {
        const auto& out = g.out_edges(key.first);
        const auto it = out.find(key.second);
        monotone = monotone && it != out.end() && it->second.traversals >= t;
      }
      last_nodes = g.node_count();
      last_edges = g.edge_count();
      for (const auto& [id, n] : g.nodes()) last_visits[id] = n.visits;
      for (const GraphEdge& e : g.edges()) last_traversals[{e.source, e.action}] = e.traversals;
    };

    const RunReport report = solve(world, graph, mock, learnings, cfg, rng, hooks);
    CHECK(report.error.empty());
    CHECK(monotone);
    CHECK(hygiene.violations.empty());

    std::uint64_t total = 0;
    for (const EpisodeReport& ep : report.episodes) {
      std::uint64_t steps = 0;
      double raw = 0.0;
      for (const RoundTrace& rt : ep.rounds) {
        steps += rt.steps.size();
        CHECK(rt.steps.size() <= rt.selection.actions.size() + rt.oracle_plan.size());
        for (const StepRecord& s : rt.steps) {
          raw += s.raw_reward;
          CHECK(s.valid == !s.state_id.is_invalid());
        }
      }
      CHECK(steps == ep.interactions);
      CHECK(raw == doctest::Approx(ep.cumulative_raw_reward));
      total += ep.interactions;
    }
    CHECK(total == report.total_interactions);
    // The vocabulary contains invalid actions, so INVALID gets some edges.
    CHECK(graph.invalid_edge_count() > 0);
    for (const GraphEdge& e : graph.edges()) {
      if (e.sink.is_invalid()) CHECK(graph.node(StateId::invalid()).value == graph.config().invalid_value);
    }
  }
}

TEST_CASE("hygiene is exercised on terminals with invalid actions") {
  std::size_t invalid_seen = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 planner_rng(seed);
    FunctionOracle mock = scenarios::random_planner(planner_rng, 6);
    EpisodeConfig cfg;
    cfg.max_episodes = 5;
    auto out = scenarios::run_toy(mock, cfg, seed);
    CHECK(out.hygiene.violations.empty());
    invalid_seen += out.hygiene.invalid_at_terminal;
  }
  CHECK(invalid_seen > 0);
}

TEST_CASE("runs are deterministic") {
  auto run = [] {
    std::mt19937_64 planner_rng(99);
    FunctionOracle mock = scenarios::random_planner(planner_rng);
    EpisodeConfig cfg;
    cfg.max_episodes = 5;
    return scenarios::run_toy(mock, cfg, 42);
  };
  const auto a = run();
  const auto b = run();
  CHECK(a.report == b.report);
  CHECK(a.graph == b.graph);
  CHECK(a.learnings == b.learnings);
}

TEST_CASE("learnings flow into the next episode's prompts") {
  int episode_counter = 0;
  std::vector<std::string> planner_prompts;
  FunctionOracle mock([&](const std::string& system, const std::string& user) {
    if (is_learner_prompt(system)) {
      ++episode_counter;
      return nlohmann::json::array({"lesson " + std::to_string(episode_counter) + " learned"})
          .dump();
    }
    planner_prompts.push_back(user);
    return std::string("[\"go kitchen\", \"go hallway\"]");
  });
  EpisodeConfig cfg;
  cfg.max_episodes = 3;
  cfg.rounds_per_episode = 1;
  auto out = scenarios::run_toy(mock, cfg);
  REQUIRE(planner_prompts.size() == 3);
  CHECK(planner_prompts[0].find("lesson") == std::string::npos);
  CHECK(planner_prompts[1].find("lesson 1 learned") != std::string::npos);
  CHECK(planner_prompts[2].find("lesson 2 learned") != std::string::npos);
  CHECK(planner_prompts[2].find("lesson 1 learned") == std::string::npos);
  CHECK(out.learnings.axioms == std::vector<std::string>{"lesson 3 learned"});
}

TEST_CASE("exploration objective is substituted at the configured rate") {
  int exploring = 0, planner_calls = 0;
  FunctionOracle mock([&](const std::string& system, const std::string& user) {
    if (is_learner_prompt(system)) return std::string("[]");
    ++planner_calls;
    if (user.find(kExplorationObjective) != std::string::npos) ++exploring;
    return std::string("[\"look around\"]");
  });
  EpisodeConfig cfg;
  cfg.sigma = 0.45;
  cfg.max_episodes = 10;
  cfg.rounds_per_episode = 5;
  auto out = scenarios::run_toy(mock, cfg);
  int flagged = 0;
  for (const auto& ep : out.report.episodes) {
    for (const auto& rt : ep.rounds) flagged += rt.exploration_objective ? 1 : 0;
  }
  CHECK(planner_calls == 50);
  CHECK(flagged == exploring);
  CHECK(exploring > 0);
  CHECK(exploring < planner_calls);
}

namespace {

class FlakyWorld final : public EnvAdapter {
 public:
  explicit FlakyWorld(int fail_after) : fail_after_(fail_after) {}
  std::string reset() override { return w_.reset(); }
  StepResult step(const std::string& a) override {
    if (a != "look around" && ++steps_ > fail_after_) throw EnvironmentError("bridge died");
    return w_.step(a);
  }
  TaskDescription describe() override { return w_.describe(); }
  std::vector<std::string> accessible_objects() override { return w_.accessible_objects(); }
  std::vector<std::string> action_templates() override { return w_.action_templates(); }
  std::string inventory() override { return w_.inventory(); }

 private:
  ToyWorld w_;
  int fail_after_;
  int steps_ = 0;
};

}  // namespace

TEST_CASE("hard failures end the run with a partial report") {
  SUBCASE("environment") {
    FlakyWorld world(2);
    ScriptedOracle mock({scenarios::canonical_answer()});
    StateGraph graph;
    Learnings learnings;
    std::mt19937_64 rng(1);
    const RunReport r = solve(world, graph, mock, learnings, EpisodeConfig{}, rng);
    CHECK_FALSE(r.solved);
    CHECK(r.error.find("bridge died") != std::string::npos);
    REQUIRE(r.episodes.size() == 1);
    // The two steps that did happen were absorbed into the graph.
    CHECK(graph.node_count() == 4);
  }
  SUBCASE("oracle transport") {
    FunctionOracle mock([](const std::string&, const std::string&) -> std::string {
      throw OracleTransportError("endpoint unreachable");
    });
    ToyWorld world;
    StateGraph graph;
    Learnings learnings;
    std::mt19937_64 rng(1);
    const RunReport r = solve(world, graph, mock, learnings, EpisodeConfig{}, rng);
    CHECK(r.error.find("endpoint unreachable") != std::string::npos);
    CHECK(r.episodes.size() == 1);
  }
}

TEST_CASE("mock runs never touch the network") {
  // Every other case in this binary uses in-process oracles.
  CHECK(HttpChatClient::requests_sent() == 0);
}
