#include "neoplanner/agent.hpp"

#include <spdlog/spdlog.h>

#include "neoplanner/errors.hpp"

namespace neoplanner {

void EpisodeConfig::validate() const {
  if (rounds_per_episode < 1) throw ConfigError("rounds_per_episode must be positive");
  if (max_episodes < 1) throw ConfigError("max_episodes must be positive");
  if (!(sigma > 0.0 && sigma < 0.5)) throw ConfigError("sigma must be in (0, 0.5)");
  if (!(goal_reward > 0.0)) throw ConfigError("goal_reward must be positive");
  if (oracle_max_retries < 0) throw ConfigError("oracle max_retries must be >= 0");
}

Feedback get_feedback(std::span<const StepRecord> action_states, double goal_reward) {
  Feedback f;
  for (const StepRecord& r : action_states) {
    f.raw_total += r.raw_reward;
    f.transformed_total += r.transformed_reward;
  }
  const double fraction = f.raw_total / goal_reward;
  if (fraction >= 1.0) {
    f.text = "The agent performed excellently and successfully solved the task.";
  } else if (fraction >= 0.5) {
    f.text = "The agent performed well and made significant progress but not enough "
             "to solve the task.";
  } else if (fraction > 0.0) {
    f.text = "The agent performed poorly and made some progress but not enough to "
             "solve the task.";
  } else {
    f.text = "The agent performed very poorly and could not make any progress "
             "towards the task.";
  }
  return f;
}

namespace {

void absorb(StateGraph& graph, std::span<const StepRecord> steps) {
  for (const StepRecord& r : steps) graph.upsert_transition(to_transition(r));
  value_sweep(graph, graph.config());
  refresh_augmented_values(graph, graph.config());
}

}  // namespace

RunReport solve(EnvAdapter& env, StateGraph& graph, OracleClient& oracle,
                Learnings& learnings, const EpisodeConfig& cfg, std::mt19937_64& rng,
                const AgentHooks& hooks) {
  cfg.validate();
  RunReport report;
  std::uint64_t exploration_runs = 0;

  TaskDescription task;
  try {
    task = env.describe();
  } catch (const EnvironmentError& e) {
    report.error = e.what();
    return report;
  }

  for (int episode = 0; episode < cfg.max_episodes; ++episode) {
    EpisodeReport ep;
    std::vector<ActionObservation> trace;
    std::vector<StepRecord> action_states;

    try {
      env.reset();
      const ProbedState start = probe_state(env);
      graph.upsert_transition(Transition{StateId::root(), std::string(kStartAction),
                                         start.id, 0.0, start.description,
                                         start.action_capacity});
      value_sweep(graph, graph.config());
      refresh_augmented_values(graph, graph.config());
      StateId current = start.id;

      for (int round = 0; round < cfg.rounds_per_episode; ++round) {
        RoundTrace rt;
        rt.selection = select_plan(graph, current, graph.config());
        if (hooks.on_selection) hooks.on_selection(current, rt.selection, graph);

        PromptContext ctx{task.objective,
                          task.prior_description,
                          learnings.axioms,
                          rt.selection.terminal_description,
                          rt.selection.avoided_actions,
                          trace,
                          default_plan_examples()};
        ObjectiveChoice choice =
            maybe_substitute_objective(std::move(ctx), exploration_runs, cfg.sigma, rng);
        rt.exploration_objective = choice.used_exploration;
        try {
          rt.oracle_plan =
              generate_action_plan(choice.context, oracle, cfg.oracle_max_retries);
        } catch (const OracleFormatError& e) {
          spdlog::warn("episode {} round {}: {}", episode + 1, round + 1, e.what());
        }

        std::vector<std::string> plan = rt.selection.actions;
        plan.insert(plan.end(), rt.oracle_plan.begin(), rt.oracle_plan.end());

        ExecutionResult result;
        try {
          result = execute_plan(env, current, plan);
        } catch (const ExecutionError& e) {
          absorb(graph, e.partial().action_states);
          throw;
        }
        absorb(graph, result.action_states);
        current = result.final_state;

        for (const StepRecord& r : result.action_states) {
          ep.cumulative_raw_reward += r.raw_reward;
          ep.cumulative_transformed_reward += r.transformed_reward;
        }
        ep.interactions += result.action_states.size();
        report.total_interactions += result.action_states.size();
        trace.insert(trace.end(), result.action_observations.begin(),
                     result.action_observations.end());
        action_states.insert(action_states.end(), result.action_states.begin(),
                             result.action_states.end());
        rt.steps = std::move(result.action_states);
        ep.rounds.push_back(std::move(rt));
        if (hooks.on_round_complete) {
          hooks.on_round_complete(episode, round, ep.rounds.back(), graph, learnings);
        }

        if (result.done || ep.cumulative_raw_reward >= cfg.goal_reward) {
          ep.done = true;
          break;
        }
      }

      const Feedback fb = get_feedback(action_states, cfg.goal_reward);
      ep.feedback = fb.text;
      learnings = update_learnings(trace, fb.text, learnings, task.objective, oracle,
                                   cfg.oracle_max_retries);
    } catch (const Error& e) {
      // Environment, execution and oracle transport failures end the run.
      report.error = e.what();
      spdlog::error("episode {} aborted: {}", episode + 1, e.what());
      report.episodes.push_back(std::move(ep));
      return report;
    }

    report.episodes.push_back(std::move(ep));
    if (hooks.on_episode_complete) {
      hooks.on_episode_complete(episode, report.episodes.back(), learnings);
    }
    if (report.episodes.back().done) {
      report.solved = true;
      break;
    }
  }
  return report;
}

}  // namespace neoplanner
