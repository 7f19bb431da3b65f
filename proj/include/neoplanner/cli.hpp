#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace neoplanner {

// Loads config, graph and learnings, runs solve() and persists the graph,
// learnings and report (log_dir/report.json). Checkpoints after every round.
// Returns 0 on a clean run, 1 on a run-time failure, 2 on a config error.
int cmd_run(const std::filesystem::path& config_path, std::ostream& out,
            std::ostream& err);

// Counts, invalid edges and the top-k non-reserved states by augmented value;
// with `rewards_report`, also the per-episode reward series of a run report.
int cmd_inspect(const std::filesystem::path& graph_path, std::size_t top_k,
                const std::optional<std::filesystem::path>& rewards_report,
                std::ostream& out, std::ostream& err);

// Prints a trace log. With a config, re-executes every logged episode against
// the configured environment and reports divergences (exit 1 if any).
int cmd_replay(const std::filesystem::path& log_path,
               const std::optional<std::filesystem::path>& config_path,
               std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace neoplanner
