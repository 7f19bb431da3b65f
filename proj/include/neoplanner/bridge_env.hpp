#pragma once

#include <sys/types.h>

#include <cstdio>
#include <iosfwd>
#include <string>
#include <vector>

#include "neoplanner/env.hpp"

namespace neoplanner {

// Line protocol for out-of-process environments. Each request is one JSON
// object per line:
//   {"op":"reset"}                     -> {"observation": str}
//   {"op":"step","action": str}        -> {"observation": str, "reward": num,
//                                          "done": bool, "valid": bool}
//   {"op":"describe"}                  -> {"objective": str,
//                                          "prior_description": str}
//   {"op":"accessible_objects"}        -> {"objects": [str]}
//   {"op":"action_templates"}          -> {"templates": [str]}
//   {"op":"inventory"}                 -> {"inventory": str}
// Any response may instead be {"error": str}.
std::string handle_bridge_request(EnvAdapter& env, const std::string& request_line);

// Serves `env` until `in` reaches EOF. Returns the number of requests handled.
std::size_t serve_bridge(EnvAdapter& env, std::istream& in, std::ostream& out);

// Environment running in a child process that speaks the line protocol on its
// stdin/stdout. The command is run through /bin/sh -c.
class SubprocessEnv final : public EnvAdapter {
 public:
  explicit SubprocessEnv(const std::string& command);
  ~SubprocessEnv() override;

  SubprocessEnv(const SubprocessEnv&) = delete;
  SubprocessEnv& operator=(const SubprocessEnv&) = delete;

  std::string reset() override;
  StepResult step(const std::string& action) override;
  TaskDescription describe() override;
  std::vector<std::string> accessible_objects() override;
  std::vector<std::string> action_templates() override;
  std::string inventory() override;

 private:
  std::string call(const std::string& request_line);

  pid_t child_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

}  // namespace neoplanner
