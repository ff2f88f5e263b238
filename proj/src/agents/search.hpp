#pragma once

#include "gvgrg/agents.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace gvgrg::detail {

inline double state_value(const GameState& s, int root_score)
{
  double v = 1.0 / (1.0 + std::exp(-static_cast<double>(s.score() - root_score)));
  if (s.status() == GameStatus::Win) v += 1.0;
  if (s.status() == GameStatus::Lose) v -= 1.0;
  return v;
}

// Plays random actions until `depth` frames have passed or the game ends.
inline void rollout(GameState& s, int depth, Rng& rng)
{
  auto legal = s.legal_actions();
  for (int d = 0; d < depth && s.running(); ++d) advance(s, legal[uniform_index(rng, legal.size())]);
}

/// Tracks the range of observed values so UCB works on [0,1].
struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v)
  {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double normalize(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

class Deadline {
 public:
  explicit Deadline(double ms) : ms_(ms), start_(std::chrono::steady_clock::now()) {}
  bool passed() const
  {
    return ms_ > 0 &&
           std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count() >= ms_;
  }

 private:
  double ms_;
  std::chrono::steady_clock::time_point start_;
};

} // namespace gvgrg::detail
