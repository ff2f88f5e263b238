#include "gvgrg/vgdl.hpp"

#include <array>
#include <utility>

namespace gvgrg {

namespace {

constexpr std::array<std::pair<SpriteKind, std::string_view>, 15> kKindNames{{
    {SpriteKind::Immovable, "Immovable"},
    {SpriteKind::Passive, "Passive"},
    {SpriteKind::Resource, "Resource"},
    {SpriteKind::Door, "Door"},
    {SpriteKind::Portal, "Portal"},
    {SpriteKind::SpawnPoint, "SpawnPoint"},
    {SpriteKind::Bomber, "Bomber"},
    {SpriteKind::Missile, "Missile"},
    {SpriteKind::RandomNPC, "RandomNPC"},
    {SpriteKind::Chaser, "Chaser"},
    {SpriteKind::Fleeing, "Fleeing"},
    {SpriteKind::FlakAvatar, "FlakAvatar"},
    {SpriteKind::ShootAvatar, "ShootAvatar"},
    {SpriteKind::MovingAvatar, "MovingAvatar"},
    {SpriteKind::OngoingAvatar, "OngoingAvatar"},
}};

constexpr std::array<std::pair<Effect, std::string_view>, 11> kEffectNames{{
    {Effect::KillSprite, "killSprite"},
    {Effect::KillBoth, "killBoth"},
    {Effect::CollectResource, "collectResource"},
    {Effect::TransformTo, "transformTo"},
    {Effect::StepBack, "stepBack"},
    {Effect::UndoAll, "undoAll"},
    {Effect::ReverseDirection, "reverseDirection"},
    {Effect::TurnAround, "turnAround"},
    {Effect::CloneSprite, "cloneSprite"},
    {Effect::AddHealthPoints, "addHealthPoints"},
    {Effect::TeleportToExit, "teleportToExit"},
}};

constexpr std::array<std::pair<TerminationKind, std::string_view>, 3> kTerminationNames{{
    {TerminationKind::Timeout, "Timeout"},
    {TerminationKind::SpriteCounter, "SpriteCounter"},
    {TerminationKind::MultiSpriteCounter, "MultiSpriteCounter"},
}};

template <class Table, class E>
std::string_view name_of(const Table& table, E value)
{
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

template <class Table>
auto value_of(const Table& table, std::string_view text) -> std::optional<typename Table::value_type::first_type>
{
  for (const auto& [v, name] : table)
    if (name == text) return v;
  return std::nullopt;
}

} // namespace

std::string_view to_string(SpriteKind kind) { return name_of(kKindNames, kind); }
std::string_view to_string(Effect effect) { return name_of(kEffectNames, effect); }
std::string_view to_string(TerminationKind kind) { return name_of(kTerminationNames, kind); }

std::optional<SpriteKind> parse_sprite_kind(std::string_view text) { return value_of(kKindNames, text); }
std::optional<Effect> parse_effect(std::string_view text) { return value_of(kEffectNames, text); }
std::optional<TerminationKind> parse_termination_kind(std::string_view text)
{
  return value_of(kTerminationNames, text);
}

bool is_avatar(SpriteKind kind)
{
  switch (kind) {
  case SpriteKind::FlakAvatar:
  case SpriteKind::ShootAvatar:
  case SpriteKind::MovingAvatar:
  case SpriteKind::OngoingAvatar:
    return true;
  default:
    return false;
  }
}

bool is_shooting_avatar(SpriteKind kind)
{
  return kind == SpriteKind::FlakAvatar || kind == SpriteKind::ShootAvatar;
}

bool is_moving(SpriteKind kind)
{
  switch (kind) {
  case SpriteKind::Missile:
  case SpriteKind::Bomber:
  case SpriteKind::RandomNPC:
  case SpriteKind::Chaser:
  case SpriteKind::Fleeing:
    return true;
  default:
    return is_avatar(kind);
  }
}

bool is_npc(SpriteKind kind)
{
  switch (kind) {
  case SpriteKind::Bomber:
  case SpriteKind::RandomNPC:
  case SpriteKind::Chaser:
  case SpriteKind::Fleeing:
    return true;
  default:
    return false;
  }
}

bool is_spawner(SpriteKind kind)
{
  return kind == SpriteKind::SpawnPoint || kind == SpriteKind::Bomber || is_shooting_avatar(kind);
}

std::optional<std::string> SpriteDef::param(std::string_view key) const
{
  auto it = params.find(std::string(key));
  if (it == params.end()) return std::nullopt;
  return it->second;
}

const SpriteDef* GameDescription::find(std::string_view name) const
{
  for (const auto& s : sprites)
    if (s.name == name) return &s;
  return nullptr;
}

const SpriteDef& GameDescription::avatar() const
{
  for (const auto& s : sprites)
    if (is_avatar(s.kind)) return s;
  throw std::logic_error("game has no avatar sprite");
}

GameDescription GameDescription::with_ruleset(Ruleset r) const
{
  GameDescription copy = *this;
  copy.ruleset = std::move(r);
  return copy;
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

} // namespace gvgrg
