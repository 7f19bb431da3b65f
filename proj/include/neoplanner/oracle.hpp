#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neoplanner/oracle_client.hpp"
#include "neoplanner/prompt.hpp"

namespace neoplanner {

// Entity-relation memory ("X Y Z" lines) carried across episodes.
struct Learnings {
  std::vector<std::string> axioms;

  friend bool operator==(const Learnings&, const Learnings&) = default;
};

bool is_valid_axiom(std::string_view axiom);

// Drops empty or underscore-joined axioms and exact duplicates, keeping the
// first occurrence. Dropped lines are logged.
Learnings sanitize_learnings(std::vector<std::string> axioms);

// Accepts a single JSON list of strings, optionally wrapped in whitespace or a
// ``` code fence. Anything else yields nullopt.
std::optional<std::vector<std::string>> parse_string_list(std::string_view text);

// sigma / ln(max(n_exp, 2)), capped at 0.5.
double exploration_probability(double sigma, std::uint64_t exploration_runs);

// Uniform in [0, 1) from the top 53 bits of one engine draw.
double uniform_draw(std::mt19937_64& rng);

struct ObjectiveChoice {
  PromptContext context;
  bool used_exploration = false;
};

// Replaces the objective with kExplorationObjective when draw < P and then
// counts the run. A draw of 1.0 never substitutes.
ObjectiveChoice maybe_substitute_objective(PromptContext ctx,
                                           std::uint64_t& exploration_runs,
                                           double sigma, double draw);
ObjectiveChoice maybe_substitute_objective(PromptContext ctx,
                                           std::uint64_t& exploration_runs,
                                           double sigma, std::mt19937_64& rng);

// Asks the oracle for the rest of the plan. An unparsable answer is re-sent
// with a format reminder up to max_retries times before OracleFormatError.
std::vector<std::string> generate_action_plan(const PromptContext& ctx,
                                              OracleClient& client, int max_retries);

// Runs the learner over one episode. The parsed list supersedes `prior`; an
// empty trace returns `prior` without calling the oracle, as does a response
// that never parses.
Learnings update_learnings(std::span<const ActionObservation> trace,
                           const std::string& feedback, const Learnings& prior,
                           const std::string& objective, OracleClient& client,
                           int max_retries);

}  // namespace neoplanner
