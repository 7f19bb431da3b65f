#include "neoplanner/oracle.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <json.hpp>

#include "neoplanner/errors.hpp"

namespace neoplanner {

namespace {

std::string_view trim(std::string_view s) {
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<std::vector<std::string>> ask_for_list(const Prompt& prompt,
                                                     OracleClient& client,
                                                     int max_retries, bool learner) {
  std::string user = prompt.user;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    const std::string response = client.complete(prompt.system, user);
    if (auto parsed = parse_string_list(response)) return parsed;
    spdlog::warn("{} answer {} did not parse as a list", learner ? "learner" : "planner",
                 attempt + 1);
    if (attempt == 0) user += format_reminder(learner);
  }
  return std::nullopt;
}

}  // namespace

bool is_valid_axiom(std::string_view axiom) {
  return !trim(axiom).empty() && axiom.find('_') == std::string_view::npos;
}

Learnings sanitize_learnings(std::vector<std::string> axioms) {
  Learnings out;
  std::set<std::string> seen;
  for (std::string& a : axioms) {
    if (!is_valid_axiom(a)) {
      spdlog::info("dropping malformed axiom '{}'", a);
      continue;
    }
    if (!seen.insert(a).second) continue;
    out.axioms.push_back(std::move(a));
  }
  return out;
}

std::optional<std::vector<std::string>> parse_string_list(std::string_view text) {
  text = trim(text);
  if (text.starts_with("```")) {
    if (!text.ends_with("```") || text.size() < 6) return std::nullopt;
    text.remove_suffix(3);
    const auto eol = text.find('\n');
    if (eol == std::string_view::npos) return std::nullopt;
    text = trim(text.substr(eol + 1));
  }
  if (!text.starts_with('[')) return std::nullopt;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;
  }
  if (!j.is_array()) return std::nullopt;
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) return std::nullopt;
    out.push_back(item.get<std::string>());
  }
  return out;
}

double exploration_probability(double sigma, std::uint64_t exploration_runs) {
  const double n = static_cast<double>(std::max<std::uint64_t>(exploration_runs, 2));
  return std::min(0.5, sigma / std::log(n));
}

double uniform_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ObjectiveChoice maybe_substitute_objective(PromptContext ctx,
                                           std::uint64_t& exploration_runs,
                                           double sigma, double draw) {
  if (!(sigma > 0.0 && sigma < 0.5)) throw ConfigError("sigma must be in (0, 0.5)");
  ObjectiveChoice choice{std::move(ctx), false};
  if (draw < exploration_probability(sigma, exploration_runs)) {
    choice.context.objective = std::string(kExplorationObjective);
    choice.used_exploration = true;
    ++exploration_runs;
  }
  return choice;
}

ObjectiveChoice maybe_substitute_objective(PromptContext ctx,
                                           std::uint64_t& exploration_runs,
                                           double sigma, std::mt19937_64& rng) {
  return maybe_substitute_objective(std::move(ctx), exploration_runs, sigma,
                                    uniform_draw(rng));
}

std::vector<std::string> generate_action_plan(const PromptContext& ctx,
                                              OracleClient& client, int max_retries) {
  auto plan = ask_for_list(render_action_plan_prompt(ctx), client, max_retries, false);
  if (!plan) {
    throw OracleFormatError("action plan not in list format after " +
                            std::to_string(max_retries + 1) + " attempts");
  }
  // Blank entries cannot be sent to an environment.
  std::erase_if(*plan, [](const std::string& a) { return trim(a).empty(); });
  return std::move(*plan);
}

Learnings update_learnings(std::span<const ActionObservation> trace,
                           const std::string& feedback, const Learnings& prior,
                           const std::string& objective, OracleClient& client,
                           int max_retries) {
  if (trace.empty()) return prior;
  auto parsed = ask_for_list(render_learner_prompt(objective, prior.axioms, trace, feedback),
                             client, max_retries, true);
  if (!parsed) {
    spdlog::warn("learner output never parsed; keeping {} previous axioms",
                 prior.axioms.size());
    return prior;
  }
  return sanitize_learnings(std::move(*parsed));
}

}  // namespace neoplanner
