#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

#include "neoplanner/agent.hpp"
#include "neoplanner/state_graph.hpp"

namespace neoplanner {

struct EnvSpec {
  enum class Kind { kToy, kBridge } kind = Kind::kToy;
  std::string command;  // bridge only
};

struct OracleSpec {
  enum class Kind { kMock, kLive } kind = Kind::kMock;
  std::filesystem::path script;  // mock
  std::string endpoint;          // live
  std::string model;
  double temperature = 0.0;
  std::chrono::seconds timeout{60};
  std::string api_key_env = "OPENAI_API_KEY";
};

struct RunPaths {
  std::filesystem::path graph;
  std::filesystem::path learnings;
  std::filesystem::path log_dir;
};

// JSON run configuration:
//   {"env": {...}, "oracle": {...}, "value": {...}, "episode": {...},
//    "paths": {"graph", "learnings", "log_dir"}, "seed": int}
// Relative paths resolve against the config file's directory. Unknown keys
// and out-of-range numbers are ConfigErrors.
struct RunConfig {
  EnvSpec env;
  OracleSpec oracle;
  ValueConfig value;
  EpisodeConfig episode;
  RunPaths paths;
  std::uint64_t seed = 0;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace neoplanner
