#include "neoplanner/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "neoplanner/errors.hpp"

namespace neoplanner {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, v] : obj.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const std::string& where, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

template <typename T>
T require(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  T out{};
  read(obj, where, key, out);
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config", {"env", "oracle", "value", "episode", "paths", "seed"});
  RunConfig cfg;

  const json env = doc.value("env", json{{"kind", "toy"}});
  reject_unknown(env, "env", {"kind", "command"});
  const auto env_kind = require<std::string>(env, "env", "kind");
  if (env_kind == "toy") {
    cfg.env.kind = EnvSpec::Kind::kToy;
  } else if (env_kind == "bridge") {
    cfg.env.kind = EnvSpec::Kind::kBridge;
    cfg.env.command = require<std::string>(env, "env", "command");
  } else {
    throw ConfigError("env.kind must be 'toy' or 'bridge'");
  }

  if (!doc.contains("oracle")) throw ConfigError("config: missing 'oracle'");
  const json& oracle = doc.at("oracle");
  reject_unknown(oracle, "oracle", {"kind", "script", "endpoint", "model", "temperature",
                                    "max_retries", "timeout_seconds", "api_key_env"});
  const auto oracle_kind = require<std::string>(oracle, "oracle", "kind");
  if (oracle_kind == "mock") {
    cfg.oracle.kind = OracleSpec::Kind::kMock;
    cfg.oracle.script = resolve(base_dir, require<std::string>(oracle, "oracle", "script"));
  } else if (oracle_kind == "live") {
    cfg.oracle.kind = OracleSpec::Kind::kLive;
    cfg.oracle.endpoint = require<std::string>(oracle, "oracle", "endpoint");
    cfg.oracle.model = require<std::string>(oracle, "oracle", "model");
  } else {
    throw ConfigError("oracle.kind must be 'mock' or 'live'");
  }
  read(oracle, "oracle", "temperature", cfg.oracle.temperature);
  read(oracle, "oracle", "max_retries", cfg.episode.oracle_max_retries);
  read(oracle, "oracle", "api_key_env", cfg.oracle.api_key_env);
  int timeout = static_cast<int>(cfg.oracle.timeout.count());
  read(oracle, "oracle", "timeout_seconds", timeout);
  if (timeout < 1) throw ConfigError("oracle.timeout_seconds must be positive");
  cfg.oracle.timeout = std::chrono::seconds(timeout);
  if (cfg.oracle.temperature < 0.0) throw ConfigError("oracle.temperature must be >= 0");

  if (doc.contains("value")) {
    const json& v = doc.at("value");
    reject_unknown(v, "value", {"alpha", "gamma", "exploration_c", "default_value",
                                "invalid_value", "k_exponent", "max_sweeps",
                                "convergence_eps", "k_source"});
    read(v, "value", "alpha", cfg.value.alpha);
    read(v, "value", "gamma", cfg.value.gamma);
    read(v, "value", "exploration_c", cfg.value.exploration_c);
    read(v, "value", "default_value", cfg.value.default_value);
    read(v, "value", "invalid_value", cfg.value.invalid_value);
    read(v, "value", "k_exponent", cfg.value.k_exponent);
    read(v, "value", "max_sweeps", cfg.value.max_sweeps);
    read(v, "value", "convergence_eps", cfg.value.convergence_eps);
    std::string k_source = "parent";
    read(v, "value", "k_source", k_source);
    if (k_source == "parent") {
      cfg.value.k_source = KFactorSource::kParent;
    } else if (k_source == "child") {
      cfg.value.k_source = KFactorSource::kChild;
    } else {
      throw ConfigError("value.k_source must be 'parent' or 'child'");
    }
  }
  cfg.value.validate();

  if (doc.contains("episode")) {
    const json& e = doc.at("episode");
    reject_unknown(e, "episode", {"rounds_per_episode", "max_episodes", "sigma",
                                  "goal_reward"});
    read(e, "episode", "rounds_per_episode", cfg.episode.rounds_per_episode);
    read(e, "episode", "max_episodes", cfg.episode.max_episodes);
    read(e, "episode", "sigma", cfg.episode.sigma);
    read(e, "episode", "goal_reward", cfg.episode.goal_reward);
  }
  cfg.episode.validate();

  if (!doc.contains("paths")) throw ConfigError("config: missing 'paths'");
  const json& p = doc.at("paths");
  reject_unknown(p, "paths", {"graph", "learnings", "log_dir"});
  cfg.paths.graph = resolve(base_dir, require<std::string>(p, "paths", "graph"));
  cfg.paths.learnings = resolve(base_dir, require<std::string>(p, "paths", "learnings"));
  cfg.paths.log_dir = resolve(base_dir, require<std::string>(p, "paths", "log_dir"));

  read(doc, "config", "seed", cfg.seed);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path());
}

}  // namespace neoplanner
