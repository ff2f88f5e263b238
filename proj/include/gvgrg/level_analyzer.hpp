#pragma once

#include "gvgrg/engine.hpp"
#include "gvgrg/random.hpp"
#include "gvgrg/vgdl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gvgrg {

/// What a generator sees: the sprite set, the level and a way to play a
/// candidate ruleset on it.
class SLDescription {
 public:
  /// The game's own ruleset is dropped; only sprites and mapping are kept.
  SLDescription(GameDescription game, LevelGrid level);

  const std::vector<SpriteDef>& sprites() const { return game_.sprites; }
  const GameDescription& game() const { return game_; }
  const LevelGrid& level() const { return level_; }
  /// The level as rows of comma-separated sprite names.
  std::vector<std::vector<std::string>> level_strings() const;
  /// Names present in the level, in sprite-set order.
  std::vector<std::string> level_sprites() const;
  bool in_level(std::string_view name) const;

  GameDescription with_ruleset(const Ruleset& ruleset) const { return game_.with_ruleset(ruleset); }
  SimulationOutcome simulate(const Ruleset& ruleset, Agent& agent, std::uint64_t seed, int max_steps = 1000) const;

 private:
  GameDescription game_;
  LevelGrid level_;
};

struct SpriteStats {
  std::string name;
  SpriteKind kind = SpriteKind::Immovable;
  int count = 0;
  double coverage = 0.0;
  bool on_border = false;
};

struct SpriteCategories {
  std::string wall{kEos};
  std::optional<std::string> score;
  std::optional<std::string> spike;
  std::string avatar;
  std::vector<std::string> fleeing;
  std::vector<std::string> bomber;
  std::vector<std::string> chaser;
  std::vector<std::string> random_npc;
  std::vector<std::string> spawners;
  std::vector<std::string> portals;
  std::vector<std::string> doors;
  std::vector<std::string> movables;
  std::vector<std::string> resources;
  /// Resources plus the score sprite.
  std::vector<std::string> collectibles;
};

inline constexpr double kWallMaxCoverage = 0.5;
inline constexpr double kSmallMaxCoverage = 0.1;

/// One entry per sprite in the set, in declaration order.
std::vector<SpriteStats> compute_stats(const SLDescription& sld);
/// Throws std::invalid_argument when the level holds no avatar.
SpriteCategories categorize(const std::vector<SpriteStats>& stats, const SLDescription& sld, Rng& rng);

} // namespace gvgrg
