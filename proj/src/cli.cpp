#include "neoplanner/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "neoplanner/agent.hpp"
#include "neoplanner/bridge_env.hpp"
#include "neoplanner/config.hpp"
#include "neoplanner/errors.hpp"
#include "neoplanner/persist.hpp"
#include "neoplanner/toy_world.hpp"

namespace neoplanner {

using nlohmann::json;

namespace {

std::unique_ptr<EnvAdapter> make_env(const EnvSpec& spec) {
  if (spec.kind == EnvSpec::Kind::kBridge) return std::make_unique<SubprocessEnv>(spec.command);
  return std::make_unique<ToyWorld>();
}

std::unique_ptr<OracleClient> make_oracle(const RunConfig& cfg) {
  if (cfg.oracle.kind == OracleSpec::Kind::kMock) {
    return std::make_unique<ScriptedOracle>(ScriptedOracle::from_file(cfg.oracle.script));
  }
  ChatEndpointConfig chat;
  chat.endpoint = cfg.oracle.endpoint;
  chat.model = cfg.oracle.model;
  chat.temperature = cfg.oracle.temperature;
  chat.max_retries = cfg.episode.oracle_max_retries;
  chat.timeout = cfg.oracle.timeout;
  if (const char* key = std::getenv(cfg.oracle.api_key_env.c_str())) chat.api_key = key;
  return std::make_unique<HttpChatClient>(std::move(chat));
}

// First line that says something; skips blank lines and the rendered headers.
std::string summary_line(const std::string& text, std::size_t limit = 60) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos || line.starts_with("Currently you")) continue;
    line = line.substr(begin);
    if (line.size() > limit) line = line.substr(0, limit - 3) + "...";
    return line;
  }
  return "";
}

}  // namespace

int cmd_run(const std::filesystem::path& config_path, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    FileLock lock(cfg.paths.graph);
    StateGraph graph(cfg.value);
    if (std::filesystem::exists(cfg.paths.graph)) {
      graph = load_graph(cfg.paths.graph);
      graph.set_config(cfg.value);
    }
    Learnings learnings;
    if (std::filesystem::exists(cfg.paths.learnings)) {
      learnings = load_learnings(cfg.paths.learnings);
    }

    std::unique_ptr<EnvAdapter> env = make_env(cfg.env);
    std::unique_ptr<OracleClient> inner = make_oracle(cfg);
    std::filesystem::create_directories(cfg.paths.log_dir);
    LoggingOracle oracle(*inner, cfg.paths.log_dir / "oracle_calls.jsonl");
    const auto trace_log = cfg.paths.log_dir / "trace.jsonl";

    AgentHooks hooks;
    hooks.on_round_complete = [&](int episode, int round, const RoundTrace& trace,
                                  const StateGraph& g, const Learnings& l) {
      append_trace_log(trace_log, episode, round, trace);
      save_graph(cfg.paths.graph, g);
      save_learnings(cfg.paths.learnings, l);
    };
    hooks.on_episode_complete = [&](int, const EpisodeReport&, const Learnings& l) {
      save_learnings(cfg.paths.learnings, l);
    };

    std::mt19937_64 rng(cfg.seed);
    const RunReport report = solve(*env, graph, oracle, learnings, cfg.episode, rng, hooks);

    save_graph(cfg.paths.graph, graph);
    save_learnings(cfg.paths.learnings, learnings);
    atomic_write_file(cfg.paths.log_dir / "report.json",
                      report_to_json(report).dump(2) + "\n");

    const double last_reward =
        report.episodes.empty() ? 0.0 : report.episodes.back().cumulative_raw_reward;
    out << "episodes: " << report.episodes.size() << '\n'
        << "interactions: " << report.total_interactions << '\n'
        << "cumulative reward (last episode): " << last_reward << '\n'
        << "solved: " << (report.solved ? "true" : "false") << '\n'
        << "graph: " << graph.node_count() << " nodes, " << graph.edge_count()
        << " edges\n";
    if (!report.error.empty()) {
      err << "run aborted: " << report.error << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_inspect(const std::filesystem::path& graph_path, std::size_t top_k,
                const std::optional<std::filesystem::path>& rewards_report,
                std::ostream& out, std::ostream& err) {
  StateGraph graph;
  try {
    graph = load_graph(graph_path);
  } catch (const std::exception& e) {
    err << "cannot load " << graph_path.string() << ": " << e.what() << '\n';
    return 1;
  }

  out << "nodes: " << graph.node_count() << '\n'
      << "edges: " << graph.edge_count() << '\n'
      << "invalid edges: " << graph.invalid_edge_count() << '\n';

  std::vector<const StateNode*> ranked;
  for (const auto& [id, node] : graph.nodes()) {
    if (!id.is_reserved()) ranked.push_back(&node);
  }
  std::sort(ranked.begin(), ranked.end(), [](const StateNode* a, const StateNode* b) {
    if (a->augmented_value != b->augmented_value) return a->augmented_value > b->augmented_value;
    return a->id < b->id;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  if (!ranked.empty()) {
    out << "top " << ranked.size() << " states by augmented value:\n"
        << "rank\taugmented\tvalue\tvisits\tid\tdescription\n";
    int rank = 1;
    for (const StateNode* n : ranked) {
      out << rank++ << '\t' << std::setprecision(6) << n->augmented_value << '\t'
          << n->value << '\t' << n->visits << '\t' << n->id.str().substr(0, 12) << '\t'
          << summary_line(n->description) << '\n';
    }
  }

  if (rewards_report) {
    json report;
    try {
      report = json::parse(read_text_file(*rewards_report));
      out << "episode\tcumulative_raw_reward\tinteractions\n";
      int i = 1;
      for (const json& ep : report.at("episodes")) {
        out << i++ << '\t' << ep.at("cumulative_raw_reward").get<double>() << '\t'
            << ep.at("interactions").get<std::uint64_t>() << '\n';
      }
    } catch (const std::exception& e) {
      err << "cannot read report " << rewards_report->string() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}

int cmd_replay(const std::filesystem::path& log_path,
               const std::optional<std::filesystem::path>& config_path,
               std::ostream& out, std::ostream& err) {
  std::ifstream in(log_path);
  if (!in) {
    err << "cannot read " << log_path.string() << '\n';
    return 1;
  }
  // episode -> steps, in log order
  std::map<int, std::vector<json>> episodes;
  std::string line;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json rec = json::parse(line);
      const int episode = rec.at("episode").get<int>();
      auto& steps = episodes[episode];
      for (const json& s : rec.at("steps")) {
        json step = s;
        step["round"] = rec.at("round");
        steps.push_back(std::move(step));
      }
    }
  } catch (const std::exception& e) {
    err << log_path.string() << ":" << line_no << ": " << e.what() << '\n';
    return 1;
  }

  out << "episode\tround\taction\traw_reward\tvalid\tstate\n";
  for (const auto& [episode, steps] : episodes) {
    for (const json& s : steps) {
      out << episode + 1 << '\t' << s.at("round").get<int>() + 1 << '\t'
          << s.at("action").get<std::string>() << '\t' << s.at("raw_reward").get<double>()
          << '\t' << (s.at("valid").get<bool>() ? "yes" : "no") << '\t'
          << s.at("state_id").get<std::string>().substr(0, 12) << '\n';
    }
  }
  if (!config_path) return 0;

  std::size_t mismatches = 0;
  try {
    const RunConfig cfg = load_run_config(*config_path);
    std::unique_ptr<EnvAdapter> env = make_env(cfg.env);
    for (const auto& [episode, steps] : episodes) {
      env->reset();
      const ProbedState start = probe_state(*env);
      std::vector<std::string> actions;
      for (const json& s : steps) actions.push_back(s.at("action").get<std::string>());
      const ExecutionResult replayed = execute_plan(*env, start.id, actions);
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i >= replayed.action_states.size()) {
          err << "episode " << episode + 1 << ": replay ended early at step " << i + 1 << '\n';
          ++mismatches;
          break;
        }
        const StepRecord& r = replayed.action_states[i];
        if (r.observation != steps[i].at("observation").get<std::string>() ||
            r.raw_reward != steps[i].at("raw_reward").get<double>() ||
            r.state_id.str() != steps[i].at("state_id").get<std::string>()) {
          err << "episode " << episode + 1 << " step " << i + 1 << " ('" << r.action
              << "') diverged\n";
          ++mismatches;
        }
      }
    }
  } catch (const std::exception& e) {
    err << "replay failed: " << e.what() << '\n';
    return 1;
  }
  out << "replayed " << episodes.size() << " episode(s), " << mismatches
      << " divergence(s)\n";
  return mismatches == 0 ? 0 : 1;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-guided planner for deterministic text environments"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "run (or resume) a planning session");
  run->add_option("--config", config, "run configuration (JSON)")->required();

  std::string graph;
  std::size_t top = 10;
  std::string rewards;
  auto* inspect = app.add_subcommand("inspect", "summarize a persisted state graph");
  inspect->add_option("--graph", graph, "graph file")->required();
  inspect->add_option("--top", top, "number of top states to list");
  inspect->add_option("--rewards", rewards, "run report whose reward series to print");

  std::string log;
  std::string replay_config;
  auto* replay = app.add_subcommand("replay", "print or re-execute a trace log");
  replay->add_option("--log", log, "trace log (trace.jsonl)")->required();
  replay->add_option("--config", replay_config, "re-execute against this run's environment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*run) return cmd_run(config, out, err);
  if (*inspect) {
    return cmd_inspect(graph, top,
                       rewards.empty() ? std::nullopt
                                       : std::optional<std::filesystem::path>(rewards),
                       out, err);
  }
  return cmd_replay(log,
                    replay_config.empty()
                        ? std::nullopt
                        : std::optional<std::filesystem::path>(replay_config),
                    out, err);
}

}  // namespace neoplanner
