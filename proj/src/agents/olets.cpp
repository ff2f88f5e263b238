#include "search.hpp"

#include <vector>

namespace gvgrg {

namespace {

struct Node {
  int parent = -1;
  std::vector<int> children;
  int visits = 0;
  double total = 0.0;
  double value = 0.0; // 0.5 * mean + 0.5 * best child value
};

} // namespace

Action olets_act(const GameState& state, const AgentBudget& budget, Rng& rng)
{
  check_budget(budget);
  auto legal = state.legal_actions();
  const std::size_t na = legal.size();
  const int root_score = state.score();
  detail::Deadline deadline(budget.time_limit_ms);
  detail::Bounds bounds;

  std::vector<Node> tree;
  tree.reserve(static_cast<std::size_t>(budget.iterations) + 1);
  tree.push_back({-1, std::vector<int>(na, -1), 0, 0.0, 0.0});

  for (int it = 0; it < budget.iterations; ++it) {
    if (it > 0 && deadline.passed()) break;
    GameState sim = copy_forward_model(state, rng());
    int cur = 0;
    int depth = 0;
    while (sim.running() && depth < budget.rollout_depth) {
      std::vector<std::size_t> open;
      for (std::size_t a = 0; a < na; ++a)
        if (tree[static_cast<std::size_t>(cur)].children[a] < 0) open.push_back(a);
      if (!open.empty()) {
        std::size_t a = open[uniform_index(rng, open.size())];
        int idx = static_cast<int>(tree.size());
        tree.push_back({cur, std::vector<int>(na, -1), 0, 0.0, 0.0});
        tree[static_cast<std::size_t>(cur)].children[a] = idx;
        advance(sim, legal[a]);
        cur = idx;
        ++depth;
        break;
      }
      const Node& n = tree[static_cast<std::size_t>(cur)];
      double log_n = std::log(static_cast<double>(n.visits));
      std::size_t best = 0;
      double best_u = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < na; ++a) {
        const Node& ch = tree[static_cast<std::size_t>(n.children[a])];
        if (ch.visits == 0) {
          best = a;
          break;
        }
        double u = bounds.normalize(ch.value) + budget.exploration * std::sqrt(log_n / ch.visits);
        if (u > best_u + 1e-12) {
          best_u = u;
          best = a;
        }
      }
      advance(sim, legal[best]);
      cur = n.children[best];
      ++depth;
    }
    detail::rollout(sim, budget.rollout_depth - depth, rng);
    double v = detail::state_value(sim, root_score);
    bounds.add(v);

    for (int i = cur; i >= 0; i = tree[static_cast<std::size_t>(i)].parent) {
      Node& n = tree[static_cast<std::size_t>(i)];
      ++n.visits;
      n.total += v;
      double mean = n.total / n.visits;
      double best_child = -std::numeric_limits<double>::infinity();
      for (int c : n.children)
        if (c >= 0 && tree[static_cast<std::size_t>(c)].visits > 0)
          best_child = std::max(best_child, tree[static_cast<std::size_t>(c)].value);
      n.value = std::isfinite(best_child) ? 0.5 * mean + 0.5 * best_child : mean;
    }
  }

  std::size_t best = 0;
  int best_visits = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < na; ++a) {
    int c = tree[0].children[a];
    if (c < 0) continue;
    const Node& ch = tree[static_cast<std::size_t>(c)];
    if (ch.visits > best_visits || (ch.visits == best_visits && ch.value > best_value)) {
      best = a;
      best_visits = ch.visits;
      best_value = ch.value;
    }
  }
  return legal[best];
}

} // namespace gvgrg
