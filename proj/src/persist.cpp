#include "neoplanner/persist.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "neoplanner/errors.hpp"
#include "neoplanner/graph_io.hpp"

namespace neoplanner {

using nlohmann::json;

namespace {

WriteFaultHook& fault_hook() {
  static WriteFaultHook hook;
  return hook;
}

void fault_point(std::string_view stage) {
  if (fault_hook()) fault_hook()(stage);
}

void write_all(int fd, const char* data, std::size_t size, const std::string& what) {
  while (size > 0) {
    const ssize_t n = ::write(fd, data, size);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error("write " + what + ": " + std::strerror(errno));
    }
    data += n;
    size -= static_cast<std::size_t>(n);
  }
}

}  // namespace

void set_write_fault_hook(WriteFaultHook hook) { fault_hook() = std::move(hook); }

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::string tmp = path.string() + ".tmp." + std::to_string(::getpid());
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error("open " + tmp + ": " + std::strerror(errno));
  try {
    const std::size_t half = content.size() / 2;
    write_all(fd, content.data(), half, tmp);
    fault_point("partial_write");
    write_all(fd, content.data() + half, content.size() - half, tmp);
    if (::fsync(fd) != 0) throw Error("fsync " + tmp + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  fault_point("before_rename");
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string msg = std::strerror(errno);
    ::unlink(tmp.c_str());
    throw Error("rename " + tmp + " -> " + path.string() + ": " + msg);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FileLock::FileLock(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::string lock = path.string() + ".lock";
  fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("open " + lock + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error("another session holds " + lock);
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

StateGraph load_graph(const std::filesystem::path& path) {
  return deserialize_graph(read_text_file(path));
}

void save_graph(const std::filesystem::path& path, const StateGraph& graph) {
  atomic_write_file(path, serialize_graph(graph));
}

Learnings load_learnings(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  auto list = parse_string_list(text);
  if (!list) throw ParseError("learnings file is not a list of strings", std::string());
  return sanitize_learnings(std::move(*list));
}

void save_learnings(const std::filesystem::path& path, const Learnings& learnings) {
  atomic_write_file(path, json(learnings.axioms).dump(2) + "\n");
}

json step_to_json(const StepRecord& s) {
  return json{{"source", s.source.str()},
              {"action", s.action},
              {"observation", s.observation},
              {"raw_reward", s.raw_reward},
              {"transformed_reward", s.transformed_reward},
              {"valid", s.valid},
              {"state_id", s.state_id.str()},
              {"action_capacity", s.action_capacity}};
}

json round_to_json(const RoundTrace& r) {
  json steps = json::array();
  for (const StepRecord& s : r.steps) steps.push_back(step_to_json(s));
  return json{{"committed_actions", r.selection.actions},
              {"stop_reason", std::string(to_string(r.selection.stop_reason))},
              {"selection_terminal", r.selection.terminal_state.str()},
              {"avoided_actions", r.selection.avoided_actions},
              {"oracle_plan", r.oracle_plan},
              {"exploration_objective", r.exploration_objective},
              {"steps", std::move(steps)}};
}

json report_to_json(const RunReport& report) {
  json episodes = json::array();
  for (const EpisodeReport& e : report.episodes) {
    json rounds = json::array();
    for (const RoundTrace& r : e.rounds) rounds.push_back(round_to_json(r));
    episodes.push_back(json{{"rounds", std::move(rounds)},
                            {"cumulative_raw_reward", e.cumulative_raw_reward},
                            {"cumulative_transformed_reward", e.cumulative_transformed_reward},
                            {"feedback", e.feedback},
                            {"interactions", e.interactions},
                            {"done", e.done}});
  }
  json out{{"episodes", std::move(episodes)},
           {"total_interactions", report.total_interactions},
           {"solved", report.solved}};
  if (!report.error.empty()) out["error"] = report.error;
  return out;
}

void append_trace_log(const std::filesystem::path& path, int episode, int round,
                      const RoundTrace& trace) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  json line = round_to_json(trace);
  line["episode"] = episode;
  line["round"] = round;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot append to " + path.string());
  out << line.dump() << '\n';
}

}  // namespace neoplanner
