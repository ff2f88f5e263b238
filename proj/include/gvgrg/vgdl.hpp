#pragma once

// Data model, parser and serializer for the VGDL subset.
//
// Game text layout (4-space indentation, four fixed section headers):
//
//   BasicGame
//       SpriteSet
//           <name> > <Kind> <param>=<value> ...
//       LevelMapping
//           <char> > <name> [<name> ...]
//       InteractionSet
//           <name> <name|EOS> > <effect> <param>=<value> ...
//       TerminationSet
//           <Kind> [stype=<name>|stype1=.. stype2=..] limit=<int> win=<True|False>
//
// A ruleset file holds the InteractionSet/TerminationSet sections alone.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gvgrg {

inline constexpr std::string_view kEos = "EOS";

enum class SpriteKind {
  Immovable,
  Passive,
  Resource,
  Door,
  Portal,
  SpawnPoint,
  Bomber,
  Missile,
  RandomNPC,
  Chaser,
  Fleeing,
  FlakAvatar,
  ShootAvatar,
  MovingAvatar,
  OngoingAvatar,
};

enum class Effect {
  KillSprite,
  KillBoth,
  CollectResource,
  TransformTo,
  StepBack,
  UndoAll,
  ReverseDirection,
  TurnAround,
  CloneSprite,
  AddHealthPoints,
  TeleportToExit,
};

enum class TerminationKind { Timeout, SpriteCounter, MultiSpriteCounter };

inline constexpr SpriteKind kAllSpriteKinds[] = {
    SpriteKind::Immovable,  SpriteKind::Passive,     SpriteKind::Resource,     SpriteKind::Door,
    SpriteKind::Portal,     SpriteKind::SpawnPoint,  SpriteKind::Bomber,       SpriteKind::Missile,
    SpriteKind::RandomNPC,  SpriteKind::Chaser,      SpriteKind::Fleeing,      SpriteKind::FlakAvatar,
    SpriteKind::ShootAvatar, SpriteKind::MovingAvatar, SpriteKind::OngoingAvatar};

inline constexpr Effect kAllEffects[] = {
    Effect::KillSprite,       Effect::KillBoth,   Effect::CollectResource, Effect::TransformTo,
    Effect::StepBack,         Effect::UndoAll,    Effect::ReverseDirection, Effect::TurnAround,
    Effect::CloneSprite,      Effect::AddHealthPoints, Effect::TeleportToExit};

std::string_view to_string(SpriteKind kind);
std::string_view to_string(Effect effect);
std::string_view to_string(TerminationKind kind);
std::optional<SpriteKind> parse_sprite_kind(std::string_view text);
std::optional<Effect> parse_effect(std::string_view text);
std::optional<TerminationKind> parse_termination_kind(std::string_view text);

bool is_avatar(SpriteKind kind);
/// Avatars that can fire their stype sprite with the USE action.
bool is_shooting_avatar(SpriteKind kind);
/// Kinds that change position on their own or under player control.
bool is_moving(SpriteKind kind);
bool is_npc(SpriteKind kind);
/// Kinds whose stype names the sprite they create.
bool is_spawner(SpriteKind kind);

using ParamMap = std::map<std::string, std::string>;

struct SpriteDef {
  std::string name;
  SpriteKind kind = SpriteKind::Immovable;
  ParamMap params;

  std::optional<std::string> param(std::string_view key) const;
  bool operator==(const SpriteDef&) const = default;
};

struct InteractionRule {
  std::string first;
  std::string second; // sprite name or kEos
  Effect effect = Effect::KillSprite;
  int score_change = 0;
  ParamMap params;

  bool operator==(const InteractionRule&) const = default;
  auto operator<=>(const InteractionRule&) const = default;
};

struct TerminationRule {
  TerminationKind kind = TerminationKind::Timeout;
  std::vector<std::string> sprites;
  int limit = 0;
  bool win = false;

  bool operator==(const TerminationRule&) const = default;
  auto operator<=>(const TerminationRule&) const = default;
};

struct Ruleset {
  std::vector<InteractionRule> interactions;
  std::vector<TerminationRule> terminations;

  std::size_t size() const { return interactions.size() + terminations.size(); }
  bool operator==(const Ruleset&) const = default;
};

struct LevelMapping {
  std::map<char, std::vector<std::string>> entries;
  bool operator==(const LevelMapping&) const = default;
};

struct GameDescription {
  std::vector<SpriteDef> sprites;
  Ruleset ruleset;
  LevelMapping mapping;

  const SpriteDef* find(std::string_view name) const;
  /// The unique avatar-kind sprite; throws std::logic_error if absent.
  const SpriteDef& avatar() const;
  GameDescription with_ruleset(Ruleset r) const;
};

/// Level as a grid of per-cell sprite-name lists, row-major.
struct LevelGrid {
  int width = 0;
  int height = 0;
  std::vector<std::vector<std::string>> cells;

  const std::vector<std::string>& at(int x, int y) const { return cells[static_cast<std::size_t>(y * width + x)]; }
  bool operator==(const LevelGrid&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

GameDescription parse_game(std::string_view text);
/// Parses the ruleset exchange format (InteractionSet/TerminationSet only).
Ruleset parse_ruleset(std::string_view text);
LevelGrid parse_level(std::string_view text, const LevelMapping& mapping);

std::string serialize_rule(const InteractionRule& rule);
std::string serialize_rule(const TerminationRule& rule);
std::string serialize_ruleset(const Ruleset& ruleset);
std::string serialize_game(const GameDescription& game);
std::string serialize_level(const LevelGrid& level, const LevelMapping& mapping);

/// Checks a ruleset against the sprite set. Never throws. When a level is
/// given, rules on sprites that can never appear in it are reported as
/// warnings.
ValidationReport validate_ruleset(const GameDescription& game, const Ruleset& ruleset,
                                  const LevelGrid* level = nullptr);

/// Why `rule` cannot run against `game`, or nullopt if it can. Shared by the
/// validator and by generators that draw only runnable rules.
std::optional<std::string> interaction_error(const GameDescription& game, const InteractionRule& rule);
std::optional<std::string> termination_error(const GameDescription& game, const TerminationRule& rule);

/// Sprite names that can exist while playing `level`: the level's own sprites
/// plus everything they (transitively) spawn, shoot or transform into.
std::vector<std::string> reachable_sprites(const GameDescription& game, const Ruleset& ruleset,
                                           const LevelGrid& level);

} // namespace gvgrg
