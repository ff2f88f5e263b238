#pragma once

#include "gvgrg/engine.hpp"

#include <memory>
#include <span>
#include <string_view>

namespace gvgrg {

struct AgentBudget {
  int iterations = 100;
  int rollout_depth = 10;
  double exploration = 1.41;
  /// Optional wall-clock cap per decision in milliseconds; 0 disables it.
  /// Runs using it are not reproducible.
  double time_limit_ms = 0.0;
};

/// Throws std::invalid_argument unless iterations and depth are >= 1.
void check_budget(const AgentBudget& budget);

Action do_nothing_act();
/// Uniform over `legal`; throws std::invalid_argument when it is empty.
Action random_act(std::span<const Action> legal, Rng& rng);
/// Closed-loop UCT; returns the most visited root action.
Action mcts_act(const GameState& state, const AgentBudget& budget, Rng& rng);
/// Open-loop tree search that replays action paths from the root each
/// iteration and values nodes by mixing their mean and best child.
Action olets_act(const GameState& state, const AgentBudget& budget, Rng& rng);

/// "donothing", "random", "mcts" or "olets".
std::unique_ptr<Agent> make_agent(std::string_view name, const AgentBudget& budget = {});

} // namespace gvgrg
