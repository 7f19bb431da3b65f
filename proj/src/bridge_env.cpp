#include "neoplanner/bridge_env.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>

#include "neoplanner/errors.hpp"

namespace neoplanner {

using nlohmann::json;

std::string handle_bridge_request(EnvAdapter& env, const std::string& request_line) {
  json response;
  try {
    const json req = json::parse(request_line);
    const std::string op = req.at("op").get<std::string>();
    if (op == "reset") {
      response = {{"observation", env.reset()}};
    } else if (op == "step") {
      const StepResult r = env.step(req.at("action").get<std::string>());
      response = {{"observation", r.observation},
                  {"reward", r.raw_reward},
                  {"done", r.done},
                  {"valid", r.valid}};
    } else if (op == "describe") {
      const TaskDescription d = env.describe();
      response = {{"objective", d.objective},
                  {"prior_description", d.prior_description}};
    } else if (op == "accessible_objects") {
      response = {{"objects", env.accessible_objects()}};
    } else if (op == "action_templates") {
      response = {{"templates", env.action_templates()}};
    } else if (op == "inventory") {
      response = {{"inventory", env.inventory()}};
    } else {
      response = {{"error", "unknown op '" + op + "'"}};
    }
  } catch (const std::exception& e) {
    response = {{"error", e.what()}};
  }
  return response.dump();
}

std::size_t serve_bridge(EnvAdapter& env, std::istream& in, std::ostream& out) {
  std::size_t handled = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out << handle_bridge_request(env, line) << '\n' << std::flush;
    ++handled;
  }
  return handled;
}

SubprocessEnv::SubprocessEnv(const std::string& command) {
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0) throw EnvironmentError("pipe: " + std::string(std::strerror(errno)));
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw EnvironmentError("pipe: " + std::string(std::strerror(errno)));
  }
  child_ = fork();
  if (child_ < 0) throw EnvironmentError("fork: " + std::string(std::strerror(errno)));
  if (child_ == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  to_child_ = fdopen(to_child[1], "w");
  from_child_ = fdopen(from_child[0], "r");
  if (!to_child_ || !from_child_) throw EnvironmentError("fdopen failed");
}

SubprocessEnv::~SubprocessEnv() {
  if (to_child_) std::fclose(to_child_);
  if (from_child_) std::fclose(from_child_);
  if (child_ > 0) {
    int status = 0;
    waitpid(child_, &status, 0);
  }
}

std::string SubprocessEnv::call(const std::string& request_line) {
  // A dead child would otherwise kill us with SIGPIPE on write.
  struct sigaction ignore {};
  struct sigaction previous {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &previous);
  const bool wrote = std::fputs(request_line.c_str(), to_child_) >= 0 &&
                     std::fputc('\n', to_child_) != EOF && std::fflush(to_child_) == 0;
  sigaction(SIGPIPE, &previous, nullptr);
  if (!wrote) throw EnvironmentError("bridge: environment process closed its input");

  std::string line;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF && c != '\n') line.push_back(static_cast<char>(c));
  if (c == EOF && line.empty()) {
    throw EnvironmentError("bridge: environment process closed its output");
  }
  return line;
}

namespace {

json parse_response(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw EnvironmentError(std::string("bridge: malformed response: ") + e.what());
  }
  if (!j.is_object()) throw EnvironmentError("bridge: response is not an object");
  if (j.contains("error")) {
    throw EnvironmentError("bridge: " + j["error"].dump());
  }
  return j;
}

template <typename T>
T field(const json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw EnvironmentError(std::string("bridge: bad field '") + name + "': " + e.what());
  }
}

}  // namespace

std::string SubprocessEnv::reset() {
  return field<std::string>(parse_response(call(R"({"op":"reset"})")), "observation");
}

StepResult SubprocessEnv::step(const std::string& action) {
  const json r = parse_response(call(json{{"op", "step"}, {"action", action}}.dump()));
  return StepResult{field<std::string>(r, "observation"), field<double>(r, "reward"),
                    field<bool>(r, "done"), field<bool>(r, "valid")};
}

TaskDescription SubprocessEnv::describe() {
  const json r = parse_response(call(R"({"op":"describe"})"));
  return {field<std::string>(r, "objective"), field<std::string>(r, "prior_description")};
}

std::vector<std::string> SubprocessEnv::accessible_objects() {
  return field<std::vector<std::string>>(parse_response(call(R"({"op":"accessible_objects"})")),
                                         "objects");
}

std::vector<std::string> SubprocessEnv::action_templates() {
  return field<std::vector<std::string>>(parse_response(call(R"({"op":"action_templates"})")),
                                         "templates");
}

std::string SubprocessEnv::inventory() {
  return field<std::string>(parse_response(call(R"({"op":"inventory"})")), "inventory");
}

}  // namespace neoplanner
