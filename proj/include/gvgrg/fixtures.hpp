#pragma once

#include "gvgrg/vgdl.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gvgrg {

/// A built-in game: its description text, level text and parsed forms.
struct Fixture {
  std::string name;
  std::string game_text;
  std::string level_text;
  GameDescription game;
  LevelGrid level;
};

/// "aliens", "boulderdash", "solarfox".
const std::vector<std::string>& fixture_names();
/// Case-insensitive lookup; throws std::invalid_argument for unknown names.
const Fixture& fixture(std::string_view name);

} // namespace gvgrg
