#include "gvgrg/agents.hpp"

#include <stdexcept>
#include <string>

namespace gvgrg {

namespace {

class DoNothingAgent : public Agent {
 public:
  Action act(const GameState&, Rng&) override { return do_nothing_act(); }
  std::string_view name() const override { return "donothing"; }
};

class RandomAgent : public Agent {
 public:
  Action act(const GameState& state, Rng& rng) override { return random_act(state.legal_actions(), rng); }
  std::string_view name() const override { return "random"; }
};

class MctsAgent : public Agent {
 public:
  explicit MctsAgent(AgentBudget b) : budget_(b) {}
  Action act(const GameState& state, Rng& rng) override { return mcts_act(state, budget_, rng); }
  std::string_view name() const override { return "mcts"; }

 private:
  AgentBudget budget_;
};

class OletsAgent : public Agent {
 public:
  explicit OletsAgent(AgentBudget b) : budget_(b) {}
  Action act(const GameState& state, Rng& rng) override { return olets_act(state, budget_, rng); }
  std::string_view name() const override { return "olets"; }

 private:
  AgentBudget budget_;
};

} // namespace

void check_budget(const AgentBudget& budget)
{
  if (budget.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (budget.rollout_depth < 1) throw std::invalid_argument("rollout depth must be >= 1");
}

Action do_nothing_act() { return Action::Nil; }

Action random_act(std::span<const Action> legal, Rng& rng)
{
  if (legal.empty()) throw std::invalid_argument("no legal actions");
  return legal[uniform_index(rng, legal.size())];
}

std::unique_ptr<Agent> make_agent(std::string_view name, const AgentBudget& budget)
{
  if (name == "donothing") return std::make_unique<DoNothingAgent>();
  if (name == "random") return std::make_unique<RandomAgent>();
  check_budget(budget);
  if (name == "mcts") return std::make_unique<MctsAgent>(budget);
  if (name == "olets") return std::make_unique<OletsAgent>(budget);
  throw std::invalid_argument("unknown agent '" + std::string(name) + "'");
}

} // namespace gvgrg
