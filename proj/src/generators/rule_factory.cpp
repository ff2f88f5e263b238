#include "gvgrg/generators.hpp"

#include <algorithm>

namespace gvgrg {

namespace {

std::vector<std::string> non_avatar_names(const GameDescription& game)
{
  std::vector<std::string> out;
  for (const auto& s : game.sprites)
    if (!is_avatar(s.kind)) out.push_back(s.name);
  return out;
}

} // namespace

Ruleset cleanse(const Ruleset& ruleset)
{
  Ruleset out;
  for (const auto& r : ruleset.interactions)
    if (std::find(out.interactions.begin(), out.interactions.end(), r) == out.interactions.end())
      out.interactions.push_back(r);
  for (const auto& t : ruleset.terminations)
    if (std::find(out.terminations.begin(), out.terminations.end(), t) == out.terminations.end())
      out.terminations.push_back(t);
  return out;
}

std::vector<InteractionRule> valid_interactions(const GameDescription& game, const std::string& first,
                                                const std::string& second, int score_change, Rng& rng)
{
  std::vector<InteractionRule> out;
  auto targets = non_avatar_names(game);
  for (Effect e : kAllEffects) {
    InteractionRule r{first, second, e, score_change, {}};
    if (e == Effect::TransformTo) {
      if (targets.empty()) continue;
      r.params["stype"] = pick(rng, targets);
    }
    if (!interaction_error(game, r)) out.push_back(std::move(r));
  }
  return out;
}

std::optional<InteractionRule> random_interaction(const GameDescription& game, const std::vector<std::string>& pool,
                                                  Rng& rng)
{
  std::vector<std::string> firsts;
  for (const auto& n : pool)
    if (n != kEos) firsts.push_back(n);
  if (firsts.empty()) return std::nullopt;
  const std::string& first = pick(rng, firsts);
  const std::string& second = pick(rng, pool);
  int score = uniform_int(rng, kMinScoreChange, kMaxScoreChange);
  auto options = valid_interactions(game, first, second, score, rng);
  if (options.empty()) return std::nullopt;
  return options[uniform_index(rng, options.size())];
}

TerminationRule random_termination(const GameDescription& game, const std::vector<std::string>& pool, bool win,
                                   Rng& rng)
{
  std::vector<std::string> names;
  for (const auto& n : pool)
    if (n != kEos && game.find(n)) names.push_back(n);
  int kinds = names.empty() ? 1 : names.size() < 2 ? 2 : 3;
  TerminationRule t;
  t.win = win;
  switch (uniform_index(rng, static_cast<std::size_t>(kinds))) {
  case 0:
    t.kind = TerminationKind::Timeout;
    t.limit = uniform_int(rng, kMinTimeout, kMaxTimeout);
    break;
  case 1:
    t.kind = TerminationKind::SpriteCounter;
    t.sprites = {pick(rng, names)};
    break;
  default: {
    t.kind = TerminationKind::MultiSpriteCounter;
    std::size_t i = uniform_index(rng, names.size());
    std::size_t j = uniform_index(rng, names.size() - 1);
    if (j >= i) ++j;
    t.sprites = {names[i], names[j]};
    break;
  }
  }
  return t;
}

} // namespace gvgrg
