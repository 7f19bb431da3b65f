#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "neoplanner/agent.hpp"
#include "neoplanner/oracle.hpp"
#include "neoplanner/state_graph.hpp"

namespace neoplanner {

// Writes `content` to a sibling temp file, fsyncs it and renames it over
// `path`, so readers only ever see the old or the new file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Fault-injection point for tests. Called with "partial_write" once half the
// temp file is written and with "before_rename" just before the rename.
using WriteFaultHook = std::function<void(std::string_view stage)>;
void set_write_fault_hook(WriteFaultHook hook);

std::string read_text_file(const std::filesystem::path& path);

// Exclusive advisory lock on `<path>.lock`, released on destruction or when
// the process dies. Throws Error if another process holds it.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

StateGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const StateGraph& graph);

// Learnings files hold the same quoted-string list the learner emits.
Learnings load_learnings(const std::filesystem::path& path);
void save_learnings(const std::filesystem::path& path, const Learnings& learnings);

nlohmann::json step_to_json(const StepRecord& step);
nlohmann::json round_to_json(const RoundTrace& round);
nlohmann::json report_to_json(const RunReport& report);

// One line per round: {"episode", "round", ...round_to_json}.
void append_trace_log(const std::filesystem::path& path, int episode, int round,
                      const RoundTrace& trace);

}  // namespace neoplanner
