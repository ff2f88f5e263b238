#include "gvgrg/vgdl.hpp"

#include "params.hpp"

#include <algorithm>
#include <set>

namespace gvgrg {

namespace {

std::optional<std::string> check_int_param(const InteractionRule& rule, const std::string& key, int min)
{
  auto it = rule.params.find(key);
  if (it == rule.params.end()) return std::nullopt;
  auto v = detail::parse_int(it->second);
  if (!v || *v < min) return key + " must be an integer >= " + std::to_string(min);
  return std::nullopt;
}

std::string describe(const InteractionRule& rule) { return "'" + serialize_rule(rule) + "': "; }

} // namespace

std::optional<std::string> interaction_error(const GameDescription& game, const InteractionRule& rule)
{
  const SpriteDef* first = game.find(rule.first);
  if (rule.first == kEos) return describe(rule) + "EOS cannot be the first sprite";
  if (!first) return describe(rule) + "undefined sprite '" + rule.first + "'";
  bool eos = rule.second == kEos;
  const SpriteDef* second = eos ? nullptr : game.find(rule.second);
  if (!eos && !second) return describe(rule) + "undefined sprite '" + rule.second + "'";

  std::set<std::string> allowed;
  switch (rule.effect) {
  case Effect::TransformTo:
    allowed = {"stype"};
    break;
  case Effect::AddHealthPoints:
    allowed = {"value", "limit"};
    break;
  case Effect::CollectResource:
    allowed = {"limit"};
    break;
  default:
    break;
  }
  for (const auto& [k, v] : rule.params)
    if (!allowed.count(k)) return describe(rule) + "parameter '" + k + "' not accepted by " + std::string(to_string(rule.effect));

  switch (rule.effect) {
  case Effect::TransformTo: {
    auto it = rule.params.find("stype");
    if (it == rule.params.end()) return describe(rule) + "transformTo requires stype";
    const SpriteDef* target = game.find(it->second);
    if (!target) return describe(rule) + "undefined sprite '" + it->second + "'";
    if (is_avatar(target->kind) && !is_avatar(first->kind))
      return describe(rule) + "transformTo cannot create a second avatar";
    break;
  }
  case Effect::AddHealthPoints:
    if (auto e = check_int_param(rule, "value", 1)) return describe(rule) + *e;
    if (auto e = check_int_param(rule, "limit", 1)) return describe(rule) + *e;
    break;
  case Effect::CollectResource:
    if (first->kind != SpriteKind::Resource) return describe(rule) + "collectResource needs a Resource as first sprite";
    if (eos) return describe(rule) + "collectResource needs a collector sprite, not EOS";
    if (auto e = check_int_param(rule, "limit", 1)) return describe(rule) + *e;
    break;
  case Effect::KillBoth:
    if (eos) return describe(rule) + "killBoth cannot target EOS";
    break;
  case Effect::TeleportToExit:
    if (eos || second->kind != SpriteKind::Portal)
      return describe(rule) + "teleportToExit needs a Portal as second sprite";
    break;
  default:
    break;
  }
  return std::nullopt;
}

std::optional<std::string> termination_error(const GameDescription& game, const TerminationRule& rule)
{
  std::string what = "'" + serialize_rule(rule) + "': ";
  if (rule.limit < 0) return what + "limit must be >= 0";
  switch (rule.kind) {
  case TerminationKind::Timeout:
    if (!rule.sprites.empty()) return what + "Timeout takes no sprites";
    break;
  case TerminationKind::SpriteCounter:
    if (rule.sprites.size() != 1) return what + "SpriteCounter needs exactly one sprite";
    break;
  case TerminationKind::MultiSpriteCounter:
    if (rule.sprites.size() < 2) return what + "MultiSpriteCounter needs at least two sprites";
    break;
  }
  for (const auto& s : rule.sprites)
    if (!game.find(s)) return what + "undefined sprite '" + s + "'";
  return std::nullopt;
}

std::vector<std::string> reachable_sprites(const GameDescription& game, const Ruleset& ruleset, const LevelGrid& level)
{
  std::set<std::string> reach;
  for (const auto& cell : level.cells) reach.insert(cell.begin(), cell.end());
  bool grew = true;
  while (grew) {
    grew = false;
    auto add = [&](const std::string& name) {
      if (game.find(name) && reach.insert(name).second) grew = true;
    };
    for (const auto& s : game.sprites) {
      if (!reach.count(s.name) || !is_spawner(s.kind)) continue;
      if (auto st = s.param("stype")) add(*st);
    }
    for (const auto& r : ruleset.interactions) {
      if (!reach.count(r.first)) continue;
      if (r.effect == Effect::TransformTo) {
        auto it = r.params.find("stype");
        if (it != r.params.end()) add(it->second);
      }
    }
  }
  std::vector<std::string> out;
  for (const auto& s : game.sprites)
    if (reach.count(s.name)) out.push_back(s.name);
  return out;
}

ValidationReport validate_ruleset(const GameDescription& game, const Ruleset& ruleset, const LevelGrid* level)
{
  ValidationReport report;
  for (std::size_t i = 0; i < ruleset.interactions.size(); ++i)
    if (auto err = interaction_error(game, ruleset.interactions[i]))
      report.errors.push_back("interaction " + std::to_string(i) + " " + *err);

  bool any_win = false;
  bool any_lose = false;
  for (std::size_t i = 0; i < ruleset.terminations.size(); ++i) {
    const auto& t = ruleset.terminations[i];
    if (auto err = termination_error(game, t)) report.errors.push_back("termination " + std::to_string(i) + " " + *err);
    (t.win ? any_win : any_lose) = true;
  }
  if (ruleset.terminations.empty()) {
    report.errors.push_back("ruleset has no termination rules");
  } else {
    if (!any_win) report.errors.push_back("ruleset has no winning termination");
    if (!any_lose) report.errors.push_back("ruleset has no losing termination");
  }

  for (std::size_t i = 0; i < ruleset.interactions.size(); ++i) {
    const auto& r = ruleset.interactions[i];
    if (std::find(ruleset.interactions.begin(), ruleset.interactions.begin() + static_cast<std::ptrdiff_t>(i), r) !=
        ruleset.interactions.begin() + static_cast<std::ptrdiff_t>(i))
      report.warnings.push_back("interaction " + std::to_string(i) + " duplicates an earlier rule");
  }
  for (std::size_t i = 0; i < ruleset.terminations.size(); ++i) {
    const auto& t = ruleset.terminations[i];
    if (std::find(ruleset.terminations.begin(), ruleset.terminations.begin() + static_cast<std::ptrdiff_t>(i), t) !=
        ruleset.terminations.begin() + static_cast<std::ptrdiff_t>(i))
      report.warnings.push_back("termination " + std::to_string(i) + " duplicates an earlier rule");
  }

  if (level) {
    auto reach_list = reachable_sprites(game, ruleset, *level);
    std::set<std::string> reach(reach_list.begin(), reach_list.end());
    for (std::size_t i = 0; i < ruleset.interactions.size(); ++i) {
      const auto& r = ruleset.interactions[i];
      bool first_ok = reach.count(r.first) > 0;
      bool second_ok = r.second == kEos || reach.count(r.second) > 0;
      if (!first_ok || !second_ok)
        report.warnings.push_back("interaction " + std::to_string(i) + " can never fire: sprite absent from level");
    }
  }
  return report;
}

} // namespace gvgrg
