#include "search.hpp"

#include <vector>

namespace gvgrg {

namespace {

struct Node {
  GameState state;
  int parent = -1;
  int depth = 0;
  std::vector<int> children; // by legal-action index, -1 when unexpanded
  int visits = 0;
  double total = 0.0;
};

} // namespace

Action mcts_act(const GameState& state, const AgentBudget& budget, Rng& rng)
{
  check_budget(budget);
  auto legal = state.legal_actions();
  const std::size_t na = legal.size();
  const int root_score = state.score();
  detail::Deadline deadline(budget.time_limit_ms);
  detail::Bounds bounds;

  std::vector<Node> tree;
  tree.reserve(static_cast<std::size_t>(budget.iterations) + 1);
  tree.push_back({copy_forward_model(state, rng()), -1, 0, std::vector<int>(na, -1), 0, 0.0});

  for (int it = 0; it < budget.iterations; ++it) {
    if (it > 0 && deadline.passed()) break;
    int cur = 0;
    while (true) {
      Node& n = tree[static_cast<std::size_t>(cur)];
      if (!n.state.running() || n.depth >= budget.rollout_depth) break;
      std::vector<std::size_t> open;
      for (std::size_t a = 0; a < na; ++a)
        if (n.children[a] < 0) open.push_back(a);
      if (!open.empty()) {
        std::size_t a = open[uniform_index(rng, open.size())];
        Node child{step(n.state, legal[a]), cur, n.depth + 1, std::vector<int>(na, -1), 0, 0.0};
        int idx = static_cast<int>(tree.size());
        tree[static_cast<std::size_t>(cur)].children[a] = idx;
        tree.push_back(std::move(child));
        cur = idx;
        break;
      }
      double log_n = std::log(static_cast<double>(n.visits));
      int best = -1;
      double best_u = -std::numeric_limits<double>::infinity();
      for (int c : n.children) {
        const Node& ch = tree[static_cast<std::size_t>(c)];
        double u = bounds.normalize(ch.total / ch.visits) + budget.exploration * std::sqrt(log_n / ch.visits);
        if (u > best_u + 1e-12) {
          best_u = u;
          best = c;
        }
      }
      cur = best;
    }

    const Node& leaf = tree[static_cast<std::size_t>(cur)];
    GameState sim = copy_forward_model(leaf.state, rng());
    detail::rollout(sim, budget.rollout_depth - leaf.depth, rng);
    double v = detail::state_value(sim, root_score);
    bounds.add(v);
    for (int i = cur; i >= 0; i = tree[static_cast<std::size_t>(i)].parent) {
      ++tree[static_cast<std::size_t>(i)].visits;
      tree[static_cast<std::size_t>(i)].total += v;
    }
  }

  std::size_t best = 0;
  int best_visits = -1;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < na; ++a) {
    int c = tree[0].children[a];
    if (c < 0) continue;
    const Node& ch = tree[static_cast<std::size_t>(c)];
    double mean = ch.total / ch.visits;
    if (ch.visits > best_visits || (ch.visits == best_visits && mean > best_mean)) {
      best = a;
      best_visits = ch.visits;
      best_mean = mean;
    }
  }
  return legal[best];
}

} // namespace gvgrg
