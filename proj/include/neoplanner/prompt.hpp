#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neoplanner/executor.hpp"

namespace neoplanner {

inline constexpr std::string_view kExplorationObjective =
    "Create a long sequence of actions to explore and know more about the "
    "environment";

struct PromptContext {
  std::string objective;
  std::string prior_axioms;
  std::vector<std::string> learnings;
  std::string current_state_text;
  std::vector<std::string> avoided_actions;
  std::vector<ActionObservation> trace;
  std::string plan_examples;

  friend bool operator==(const PromptContext&, const PromptContext&) = default;
};

struct Prompt {
  std::string system;
  std::string user;
};

std::string default_plan_examples();
std::string render_trace(std::span<const ActionObservation> trace);
std::string render_environment(const std::string& objective,
                               const std::string& prior_axioms,
                               std::span<const std::string> learnings);
std::string render_instructions(const std::string& current_state_text,
                                std::span<const std::string> avoided_actions);

Prompt render_action_plan_prompt(const PromptContext& ctx);
Prompt render_learner_prompt(const std::string& objective,
                             std::span<const std::string> learnings,
                             std::span<const ActionObservation> trace,
                             const std::string& feedback);

// Appended to the user message when the previous answer did not parse.
std::string format_reminder(bool learner);

// True if `system` is a learner prompt rather than an action-plan prompt.
bool is_learner_prompt(std::string_view system);

}  // namespace neoplanner
