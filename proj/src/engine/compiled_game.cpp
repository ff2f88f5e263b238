#include "gvgrg/engine.hpp"

#include "../vgdl/params.hpp"

#include <cmath>

namespace gvgrg {

namespace {

Direction direction_of(std::string_view s)
{
  if (s == "UP") return Direction::Up;
  if (s == "DOWN") return Direction::Down;
  if (s == "LEFT") return Direction::Left;
  if (s == "RIGHT") return Direction::Right;
  return Direction::None;
}

int default_period(SpriteKind kind)
{
  if (is_avatar(kind) || kind == SpriteKind::Missile || kind == SpriteKind::SpawnPoint) return 1;
  if (is_npc(kind)) return 2;
  return 1;
}

Direction default_orientation(SpriteKind kind)
{
  switch (kind) {
  case SpriteKind::Missile:
  case SpriteKind::Bomber:
    return Direction::Right;
  case SpriteKind::FlakAvatar:
  case SpriteKind::ShootAvatar:
    return Direction::Up;
  default:
    return Direction::None;
  }
}

int int_param(const ParamMap& params, const char* key, int fallback)
{
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return detail::parse_int(it->second).value_or(fallback);
}

} // namespace

InvalidGame::InvalidGame(ValidationReport report)
    : std::runtime_error(report.errors.empty() ? std::string("invalid game") : report.errors.front()),
      report_(std::move(report))
{
}

bool CompiledGame::equivalent(const CompiledGame& o) const
{
  return width_ == o.width_ && height_ == o.height_ && types_ == o.types_ && rules_ == o.rules_ &&
         terminations_ == o.terminations_ && placements_ == o.placements_ && avatar_type_ == o.avatar_type_;
}

int CompiledGame::type_index(std::string_view name) const
{
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (types_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::shared_ptr<const CompiledGame> CompiledGame::compile(const GameDescription& game, const LevelGrid& level)
{
  auto report = validate_ruleset(game, game.ruleset, &level);
  if (!report.ok()) throw InvalidGame(std::move(report));
  if (level.width <= 0 || level.height <= 0) throw InvalidGame({{"level has no cells"}, {}});

  auto out = std::make_shared<CompiledGame>();
  out->width_ = level.width;
  out->height_ = level.height;
  out->description_ = game;
  out->report_ = std::move(report);

  int avatars = 0;
  int resource_slots = 0;
  for (const auto& def : game.sprites) {
    Type t;
    t.name = def.name;
    t.kind = def.kind;
    t.period = default_period(def.kind);
    if (auto speed = def.param("speed")) {
      double v = detail::parse_double(*speed).value_or(1.0);
      t.period = v >= 1.0 ? 1 : static_cast<int>(std::ceil(1.0 / v - 1e-9));
    }
    t.period = int_param(def.params, "cooldown", t.period);
    if (auto p = def.param("prob")) {
      t.prob = detail::parse_double(*p).value_or(0.0);
    } else {
      t.prob = def.kind == SpriteKind::SpawnPoint ? 1.0 : 0.1;
    }
    t.limit = int_param(def.params, "limit", 0);
    t.total = int_param(def.params, "total", 0);
    t.orientation = def.param("orientation") ? direction_of(*def.param("orientation")) : default_orientation(def.kind);
    if (def.kind == SpriteKind::Resource) {
      if (resource_slots >= kMaxResourceKinds) throw InvalidGame({{"too many Resource sprites"}, {}});
      t.resource_slot = resource_slots++;
      t.capacity = int_param(def.params, "total", int_param(def.params, "limit", 100));
    }
    if (is_avatar(def.kind)) {
      out->avatar_type_ = static_cast<int>(out->types_.size());
      ++avatars;
    }
    out->types_.push_back(std::move(t));
  }
  if (avatars != 1) throw InvalidGame({{"game needs exactly one avatar sprite"}, {}});
  for (std::size_t i = 0; i < game.sprites.size(); ++i) {
    if (auto st = game.sprites[i].param("stype")) {
      int idx = out->type_index(*st);
      if (idx < 0) throw InvalidGame({{"dangling stype reference '" + *st + "'"}, {}});
      out->types_[i].stype = idx;
    }
    SpriteKind kind = out->types_[i].kind;
    if ((is_spawner(kind) || kind == SpriteKind::Portal || kind == SpriteKind::Chaser || kind == SpriteKind::Fleeing) &&
        out->types_[i].stype < 0)
      throw InvalidGame({{"sprite '" + out->types_[i].name + "' requires stype"}, {}});
  }

  out->first_types_.assign(out->types_.size(), false);
  for (const auto& r : game.ruleset.interactions) {
    Rule c;
    c.first = out->type_index(r.first);
    c.second = r.second == kEos ? -1 : out->type_index(r.second);
    c.effect = r.effect;
    c.score = r.score_change;
    if (auto it = r.params.find("stype"); it != r.params.end()) c.stype = out->type_index(it->second);
    c.value = int_param(r.params, "value", 1);
    c.limit = int_param(r.params, "limit", 0);
    out->first_types_[static_cast<std::size_t>(c.first)] = true;
    out->rules_.push_back(c);
  }
  for (const auto& t : game.ruleset.terminations) {
    Termination c;
    c.kind = t.kind;
    for (const auto& s : t.sprites) c.types.push_back(out->type_index(s));
    c.limit = t.limit;
    c.win = t.win;
    out->terminations_.push_back(std::move(c));
  }

  for (int y = 0; y < level.height; ++y) {
    for (int x = 0; x < level.width; ++x) {
      for (const auto& name : level.at(x, y)) {
        int idx = out->type_index(name);
        if (idx < 0) throw InvalidGame({{"level references unknown sprite '" + name + "'"}, {}});
        out->placements_.push_back({Position{static_cast<std::int16_t>(x), static_cast<std::int16_t>(y)}, idx});
      }
    }
  }

  switch (out->types_[static_cast<std::size_t>(out->avatar_type_)].kind) {
  case SpriteKind::FlakAvatar:
    out->legal_actions_ = {Action::Nil, Action::Left, Action::Right, Action::Use};
    break;
  case SpriteKind::ShootAvatar:
    out->legal_actions_ = {Action::Nil, Action::Up, Action::Down, Action::Left, Action::Right, Action::Use};
    break;
  default:
    out->legal_actions_ = {Action::Nil, Action::Up, Action::Down, Action::Left, Action::Right};
    break;
  }
  return out;
}

} // namespace gvgrg
