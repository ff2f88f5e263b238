#include "gvgrg/generators.hpp"

#include <stdexcept>

namespace gvgrg {

Ruleset generate_random(const SLDescription& sld, Rng& rng)
{
  const auto& game = sld.game();
  auto present = sld.level_sprites();
  std::string avatar;
  std::vector<std::string> others;
  for (const auto& n : present) {
    if (is_avatar(game.find(n)->kind))
      avatar = n;
    else
      others.push_back(n);
  }
  if (avatar.empty()) throw std::invalid_argument("level has no avatar");

  Ruleset out;
  auto seconds = present;
  seconds.emplace_back(kEos);
  int k = uniform_int(rng, 1, std::min(kMaxRandomInteractions, static_cast<int>(present.size())));
  for (int i = 0; i < k; ++i) {
    const std::string& first = pick(rng, present);
    const std::string& second = pick(rng, seconds);
    int score = uniform_int(rng, kMinScoreChange, kMaxScoreChange);
    auto options = valid_interactions(game, first, second, score, rng);
    out.interactions.push_back(options[uniform_index(rng, options.size())]);
  }

  TerminationRule win;
  win.win = true;
  if (others.empty() || bernoulli(rng, 0.5)) {
    win.kind = TerminationKind::Timeout;
    win.limit = uniform_int(rng, kMinTimeout, kMaxTimeout);
  } else {
    win.kind = TerminationKind::SpriteCounter;
    win.sprites = {pick(rng, others)};
  }
  out.terminations.push_back(win);
  out.terminations.push_back({TerminationKind::SpriteCounter, {avatar}, 0, false});
  return out;
}

} // namespace gvgrg
