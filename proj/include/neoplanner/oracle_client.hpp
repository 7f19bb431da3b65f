#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace neoplanner {

// Blocking chat-completion boundary. Implementations throw
// OracleTransportError when no answer could be obtained.
class OracleClient {
 public:
  virtual ~OracleClient() = default;
  virtual std::string complete(const std::string& system, const std::string& user) = 0;
};

// Replays canned answers. Planner and learner prompts draw from separate
// queues; once a queue runs dry its last answer repeats ("[]" if it was
// empty from the start).
class ScriptedOracle final : public OracleClient {
 public:
  ScriptedOracle(std::vector<std::string> planner_responses,
                 std::vector<std::string> learner_responses = {});

  // Script file: {"planner": [...], "learner": [...]}. Entries are either raw
  // response strings or JSON arrays, which are sent back serialized.
  static ScriptedOracle from_file(const std::filesystem::path& path);
  static ScriptedOracle from_json(const nlohmann::json& script);

  std::string complete(const std::string& system, const std::string& user) override;

  std::size_t planner_calls() const noexcept { return planner_calls_; }
  std::size_t learner_calls() const noexcept { return learner_calls_; }

 private:
  std::vector<std::string> planner_;
  std::vector<std::string> learner_;
  std::size_t planner_calls_ = 0;
  std::size_t learner_calls_ = 0;
};

// Adapts a callable; handy for tests that inspect prompts.
class FunctionOracle final : public OracleClient {
 public:
  using Fn = std::function<std::string(const std::string&, const std::string&)>;
  explicit FunctionOracle(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const std::string& system, const std::string& user) override {
    return fn_(system, user);
  }

 private:
  Fn fn_;
};

struct ChatEndpointConfig {
  std::string endpoint;  // full URL of the chat-completions resource
  std::string model;
  double temperature = 0.0;
  int max_retries = 2;   // transport-level retries per call
  std::chrono::seconds timeout{60};
  std::string api_key;   // sent as a bearer token when non-empty
};

nlohmann::json build_chat_request(const std::string& model, double temperature,
                                  const std::string& system, const std::string& user);
// Text of the first choice; throws OracleTransportError on anything else.
std::string parse_chat_response(const std::string& body);

class HttpChatClient final : public OracleClient {
 public:
  explicit HttpChatClient(ChatEndpointConfig config);
  std::string complete(const std::string& system, const std::string& user) override;

  // Requests sent by every HttpChatClient in this process.
  static std::size_t requests_sent() noexcept { return requests_sent_.load(); }

 private:
  ChatEndpointConfig config_;
  std::string origin_;
  std::string path_;
  static std::atomic<std::size_t> requests_sent_;
};

// Appends one JSON record per call ({call, system, user, response} or
// {call, system, user, error}) to a log file.
class LoggingOracle final : public OracleClient {
 public:
  LoggingOracle(OracleClient& inner, std::filesystem::path log_path);
  std::string complete(const std::string& system, const std::string& user) override;

 private:
  OracleClient& inner_;
  std::filesystem::path log_path_;
  std::size_t calls_ = 0;
};

}  // namespace neoplanner
