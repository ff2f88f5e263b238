#include "gvgrg/level_analyzer.hpp"

#include <algorithm>
#include <stdexcept>

namespace gvgrg {

SLDescription::SLDescription(GameDescription game, LevelGrid level) : game_(std::move(game)), level_(std::move(level))
{
  game_.ruleset = {};
  if (level_.width <= 0 || level_.height <= 0) throw std::invalid_argument("level is empty");
  for (const auto& cell : level_.cells)
    for (const auto& name : cell)
      if (!game_.find(name)) throw std::invalid_argument("level references unknown sprite '" + name + "'");
}

std::vector<std::vector<std::string>> SLDescription::level_strings() const
{
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(level_.height));
  for (int y = 0; y < level_.height; ++y) {
    for (int x = 0; x < level_.width; ++x) {
      std::string cell;
      for (const auto& name : level_.at(x, y)) {
        if (!cell.empty()) cell += ',';
        cell += name;
      }
      rows[static_cast<std::size_t>(y)].push_back(std::move(cell));
    }
  }
  return rows;
}

bool SLDescription::in_level(std::string_view name) const
{
  for (const auto& cell : level_.cells)
    if (std::find(cell.begin(), cell.end(), name) != cell.end()) return true;
  return false;
}

std::vector<std::string> SLDescription::level_sprites() const
{
  std::vector<std::string> out;
  for (const auto& s : game_.sprites)
    if (in_level(s.name)) out.push_back(s.name);
  return out;
}

SimulationOutcome SLDescription::simulate(const Ruleset& ruleset, Agent& agent, std::uint64_t seed, int max_steps) const
{
  return gvgrg::simulate(with_ruleset(ruleset), level_, agent, max_steps, seed);
}

std::vector<SpriteStats> compute_stats(const SLDescription& sld)
{
  const auto& level = sld.level();
  const double cells = static_cast<double>(level.width) * level.height;
  std::vector<SpriteStats> out;
  for (const auto& def : sld.sprites()) {
    SpriteStats st{def.name, def.kind, 0, 0.0, false};
    int occupied = 0;
    bool border = true;
    for (int y = 0; y < level.height; ++y) {
      for (int x = 0; x < level.width; ++x) {
        const auto& cell = level.at(x, y);
        auto n = std::count(cell.begin(), cell.end(), def.name);
        st.count += static_cast<int>(n);
        if (n > 0) ++occupied;
        bool edge = x == 0 || y == 0 || x == level.width - 1 || y == level.height - 1;
        if (edge && n == 0) border = false;
      }
    }
    st.coverage = occupied / cells;
    st.on_border = border && occupied > 0;
    out.push_back(std::move(st));
  }
  return out;
}

SpriteCategories categorize(const std::vector<SpriteStats>& stats, const SLDescription&, Rng& rng)
{
  SpriteCategories cat;
  std::vector<std::string> small;
  bool have_avatar = false;
  for (const auto& st : stats) {
    if (st.count == 0) continue;
    switch (st.kind) {
    case SpriteKind::Immovable:
      if (cat.wall == kEos && st.on_border && st.coverage <= kWallMaxCoverage)
        cat.wall = st.name;
      else if (st.coverage <= kSmallMaxCoverage)
        small.push_back(st.name);
      break;
    case SpriteKind::Passive:
    case SpriteKind::Missile:
      cat.movables.push_back(st.name);
      break;
    case SpriteKind::Resource:
      cat.resources.push_back(st.name);
      break;
    case SpriteKind::Door:
      cat.doors.push_back(st.name);
      break;
    case SpriteKind::Portal:
      cat.portals.push_back(st.name);
      break;
    case SpriteKind::SpawnPoint:
      cat.spawners.push_back(st.name);
      break;
    case SpriteKind::Bomber:
      cat.bomber.push_back(st.name);
      break;
    case SpriteKind::RandomNPC:
      cat.random_npc.push_back(st.name);
      break;
    case SpriteKind::Chaser:
      cat.chaser.push_back(st.name);
      break;
    case SpriteKind::Fleeing:
      cat.fleeing.push_back(st.name);
      break;
    default:
      if (is_avatar(st.kind)) {
        cat.avatar = st.name;
        have_avatar = true;
      }
      break;
    }
  }
  if (!have_avatar) throw std::invalid_argument("level has no avatar");

  if (!small.empty()) {
    std::size_t i = uniform_index(rng, small.size());
    cat.score = small[i];
    small.erase(small.begin() + static_cast<std::ptrdiff_t>(i));
  }
  if (!small.empty()) cat.spike = small[uniform_index(rng, small.size())];

  cat.collectibles = cat.resources;
  if (cat.score) cat.collectibles.push_back(*cat.score);
  return cat;
}

} // namespace gvgrg
