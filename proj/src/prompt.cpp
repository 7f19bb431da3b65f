#include "neoplanner/prompt.hpp"

namespace neoplanner {

namespace {

constexpr std::string_view kPlannerSystem =
    "You are an AI action planner for an autonomous agent. You are situated in a "
    "task environment, as provide by the user, prior axioms are the fixed rules and "
    "constraints of the environment, the belief axioms are your beliefs about the "
    "environment. You need to generate an action plan that will contain a sequence "
    "of actions to meet the objective of the environment. Do not generate any "
    "additional explanations. The output should be a list of actions.\n\n"
    "Here are some example outputs.\n\n";

constexpr std::string_view kPlannerUser =
    "Generate the action plan for the following environment. If there are "
    "ADDITIONAL INSTRUCTIONS, then give MOST IMPORTANCE on the ADDITIONAL "
    "INSTRUCTIONS to generate the action plan.\n\nEnvironment:\n\n";

constexpr std::string_view kLearnerSystem =
    "You are an expert assistant. You are given ACTION OBSERVATION TRACE, a "
    "sequence of actions that an agent made in an environment to accomplish a task "
    "and the perceptions it got.\n\n"
    "You need to derive a comprehensive LEARNINGS as BELIEFAXIOMS. Capture all the "
    "details in the ACTION OBSERVATION TRACE.\n\n"
    "You can use the beliefaxioms from a list of related similar problem "
    "environments to derive the new one.\n\n"
    "Generate beliefaxioms, that will help the agent to successfully accomplish the "
    "SAME objective AGAIN, in the SAME environment.\n\n"
    "Each line can ONLY be of the following forms:\n\nX Y Z\n\n"
    "where X and Z are entities, subject, object, events from action perception "
    "trace and Y are relation between X and Z. DO NOT add \"_\" in X, Y or Z. "
    "Rigorously capture everything in the action observation trace as memory.\n\n"
    "Update on top of the current estimated belief axioms of the current "
    "environment based on the action observation trace. Do not remove the existing "
    "beliefs.\n\n"
    "Modify or remove the existing beliefs only if it contradicts with ACTION "
    "OBSERVATION TRACE. You can add your new beliefs to the belief axioms.\n\n"
    "The output should always be STRICTLY generated in the following list "
    "structure. Each element of list will be a text enclosed in DOUBLE QUOTES. add "
    "proper escape characters in the text if required. DO NOT enclose the list in "
    "`` tags.\n\n"
    "[<list of learnings. do not write redundant or contradicting statements>]\n\n"
    "Here is the environment objective and current belief axioms. You should "
    "update and output the belief axioms based on the action observation trace "
    "provided by the user.\n\nEnvironment:\n\n";

constexpr std::string_view kLearnerUser =
    "Here is the action observation trace. Provide the belied axioms for this. "
    "COMBINE MULTIPLE LINES OF BELIEFAXIOMS INTO ONE, WHEREVER POSSIBLE.\n\n"
    "Action observation trace:\n\n";

}  // namespace

std::string default_plan_examples() {
  return "Example 1:\n\n[\"look around\", \"open door to greenhouse\"]\n\n"
         "Example 2:\n\n[\"go door to hallway\", \"open door to kitchen\"]\n";
}

std::string render_trace(std::span<const ActionObservation> trace) {
  if (trace.empty()) return "(no actions taken yet)\n";
  std::string out;
  for (const ActionObservation& step : trace) {
    out += "action: " + step.action + "\nobservation: " + step.observation;
    if (out.back() != '\n') out += '\n';
  }
  return out;
}

std::string render_environment(const std::string& objective,
                               const std::string& prior_axioms,
                               std::span<const std::string> learnings) {
  std::string out = "objective:\n\n" + objective + "\n\n";
  if (!prior_axioms.empty()) out += "prior axioms:\n\n" + prior_axioms + "\n\n";
  out += "belief axioms:\n\n";
  if (learnings.empty()) out += "(none yet)\n";
  for (const std::string& axiom : learnings) out += axiom + "\n";
  return out;
}

std::string render_instructions(const std::string& current_state_text,
                                std::span<const std::string> avoided_actions) {
  std::string out = "You are at the state:\n\n" + current_state_text;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += "\nfind rest of the action plan.";
  if (!avoided_actions.empty()) {
    out += " You should STRICTLY AVOID the following IMMEDIATE ACTIONS from the "
           "current state.\n\n";
    for (const std::string& a : avoided_actions) out += a + "\n";
  } else {
    out += "\n";
  }
  return out;
}

Prompt render_action_plan_prompt(const PromptContext& ctx) {
  Prompt p;
  p.system = std::string(kPlannerSystem) + ctx.plan_examples +
             "\nHere are some historical traces of action and observation:\n" +
             render_trace(ctx.trace);
  p.user = std::string(kPlannerUser) +
           render_environment(ctx.objective, ctx.prior_axioms, ctx.learnings) +
           "\nADDITIONAL INSTRUCTIONS:\n\n" +
           render_instructions(ctx.current_state_text, ctx.avoided_actions);
  return p;
}

Prompt render_learner_prompt(const std::string& objective,
                             std::span<const std::string> learnings,
                             std::span<const ActionObservation> trace,
                             const std::string& feedback) {
  Prompt p;
  p.system = std::string(kLearnerSystem) + render_environment(objective, "", learnings);
  p.user = std::string(kLearnerUser) + render_trace(trace) +
           "\nHere is the feedback on the overall progress of the agent\n\n" +
           feedback + "\n";
  return p;
}

std::string format_reminder(bool learner) {
  if (learner) {
    return "\n\nYour previous answer could not be parsed. Output ONLY a list of "
           "belief axioms, each enclosed in DOUBLE QUOTES, for example "
           "[\"key in drawer can be moved to inventory\"].";
  }
  return "\n\nYour previous answer could not be parsed. Output ONLY a list of "
         "actions, each enclosed in DOUBLE QUOTES, for example "
         "[\"look around\", \"open door to greenhouse\"].";
}

bool is_learner_prompt(std::string_view system) {
  return system.find("BELIEFAXIOMS") != std::string_view::npos;
}

}  // namespace neoplanner
