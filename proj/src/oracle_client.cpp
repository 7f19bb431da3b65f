#include "neoplanner/oracle_client.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <regex>

#include "neoplanner/errors.hpp"
#include "neoplanner/prompt.hpp"

namespace neoplanner {

using nlohmann::json;

std::atomic<std::size_t> HttpChatClient::requests_sent_{0};

ScriptedOracle::ScriptedOracle(std::vector<std::string> planner_responses,
                               std::vector<std::string> learner_responses)
    : planner_(std::move(planner_responses)), learner_(std::move(learner_responses)) {}

ScriptedOracle ScriptedOracle::from_json(const json& script) {
  if (!script.is_object()) throw ConfigError("mock script must be a JSON object");
  auto read = [&](const char* key) {
    std::vector<std::string> out;
    if (!script.contains(key)) return out;
    const json& list = script.at(key);
    if (!list.is_array()) throw ConfigError(std::string("mock script '") + key + "' must be a list");
    for (const json& entry : list) {
      if (entry.is_string()) {
        out.push_back(entry.get<std::string>());
      } else if (entry.is_array()) {
        out.push_back(entry.dump());
      } else {
        throw ConfigError(std::string("mock script '") + key +
                          "' entries must be strings or lists");
      }
    }
    return out;
  };
  for (const auto& [key, value] : script.items()) {
    if (key != "planner" && key != "learner") {
      throw ConfigError("unknown mock script field '" + key + "'");
    }
  }
  return ScriptedOracle(read("planner"), read("learner"));
}

ScriptedOracle ScriptedOracle::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read mock script " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("mock script " + path.string() + ": " + e.what());
  }
}

std::string ScriptedOracle::complete(const std::string& system, const std::string&) {
  const bool learner = is_learner_prompt(system);
  const auto& queue = learner ? learner_ : planner_;
  std::size_t& calls = learner ? learner_calls_ : planner_calls_;
  const std::size_t i = calls++;
  if (queue.empty()) return "[]";
  return queue[std::min(i, queue.size() - 1)];
}

json build_chat_request(const std::string& model, double temperature,
                        const std::string& system, const std::string& user) {
  return json{{"model", model},
              {"messages", json::array({json{{"role", "system"}, {"content", system}},
                                        json{{"role", "user"}, {"content", user}}})},
              {"temperature", temperature}};
}

std::string parse_chat_response(const std::string& body) {
  try {
    const json j = json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw OracleTransportError(std::string("unexpected chat response: ") + e.what());
  }
}

HttpChatClient::HttpChatClient(ChatEndpointConfig config) : config_(std::move(config)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, kUrl)) {
    throw ConfigError("oracle endpoint must be an http(s) URL: " + config_.endpoint);
  }
  origin_ = m[1];
  path_ = m[2].matched ? std::string(m[2]) : "/";
}

std::string HttpChatClient::complete(const std::string& system, const std::string& user) {
  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const std::string body =
      build_chat_request(config_.model, config_.temperature, system, user).dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    ++requests_sent_;
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
    } else if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      // Client errors other than rate limiting will not improve on retry.
      if (res->status >= 400 && res->status < 500 && res->status != 429) break;
    } else {
      return parse_chat_response(res->body);
    }
    spdlog::warn("oracle call attempt {} failed: {}", attempt + 1, last_error);
  }
  throw OracleTransportError("oracle unreachable: " + last_error);
}

LoggingOracle::LoggingOracle(OracleClient& inner, std::filesystem::path log_path)
    : inner_(inner), log_path_(std::move(log_path)) {}

std::string LoggingOracle::complete(const std::string& system, const std::string& user) {
  json record{{"call", calls_++}, {"system", system}, {"user", user}};
  auto append = [&] {
    std::ofstream out(log_path_, std::ios::app);
    out << record.dump() << '\n';
  };
  try {
    std::string response = inner_.complete(system, user);
    record["response"] = response;
    append();
    return response;
  } catch (const std::exception& e) {
    record["error"] = e.what();
    append();
    throw;
  }
}

}  // namespace neoplanner
