#include "gvgrg/agents.hpp"
#include "gvgrg/fixtures.hpp"
#include "gvgrg/level_analyzer.hpp"

#include <doctest.h>

using namespace gvgrg;

namespace {

const char* kGame = R"(BasicGame
    SpriteSet
        floor > Immovable
        wall > Immovable
        gem > Immovable
        avatar > MovingAvatar
    LevelMapping
        . > floor
        w > wall floor
        g > gem floor
        A > avatar floor
    InteractionSet
    TerminationSet
        SpriteCounter stype=avatar limit=0 win=False
        Timeout limit=100 win=True
)";

SLDescription bordered(int n)
{
  std::string level;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      bool border = x == 0 || y == 0 || x == n - 1 || y == n - 1;
      level += border ? 'w' : (x == 1 && y == 1 ? 'A' : '.');
    }
    level += '\n';
  }
  auto g = parse_game(kGame);
  return SLDescription(g, parse_level(level, g.mapping));
}

const SpriteStats& stat(const std::vector<SpriteStats>& all, const std::string& name)
{
  for (const auto& s : all)
    if (s.name == name) return s;
  throw std::logic_error(name);
}

} // namespace

TEST_CASE("coverage statistics")
{
  auto sld = bordered(10);
  auto stats = compute_stats(sld);
  REQUIRE(stats.size() == 4);
  CHECK(stat(stats, "floor").coverage == doctest::Approx(1.0));
  CHECK(stat(stats, "floor").count == 100);
  CHECK(stat(stats, "wall").coverage == doctest::Approx(0.36));
  CHECK(stat(stats, "wall").on_border);
  CHECK(stat(stats, "gem").count == 0);
  CHECK(stat(stats, "gem").coverage == 0.0);
  CHECK_FALSE(stat(stats, "avatar").on_border);
}

TEST_CASE("description drops the ruleset")
{
  const auto& f = fixture("aliens");
  SLDescription sld(f.game, f.level);
  CHECK(sld.game().ruleset.interactions.empty());
  CHECK(sld.game().ruleset.terminations.empty());
  CHECK(sld.in_level("portal"));
  CHECK_FALSE(sld.in_level("bomb"));
  auto names = sld.level_sprites();
  CHECK(names == std::vector<std::string>{"base", "avatar", "portal"});
  CHECK(sld.level_strings()[10][9] == "avatar");
}

TEST_CASE("categorize aliens")
{
  const auto& f = fixture("aliens");
  SLDescription sld(f.game, f.level);
  Rng rng(1);
  auto cat = categorize(compute_stats(sld), sld, rng);
  CHECK(cat.avatar == "avatar");
  CHECK((cat.wall == std::string(kEos) || cat.wall == "base"));
  CHECK(cat.spawners == std::vector<std::string>{"portal"});
}

TEST_CASE("dense border walls fall back to EOS")
{
  auto sld = bordered(5);
  auto stats = compute_stats(sld);
  CHECK(stat(stats, "wall").coverage == doctest::Approx(16.0 / 25.0));
  Rng rng(2);
  auto cat = categorize(stats, sld, rng);
  CHECK(cat.wall == std::string(kEos));
  // floor covers everything and gem is absent, so nothing is small enough
  CHECK_FALSE(cat.score);
  CHECK_FALSE(cat.spike);
}

TEST_CASE("sparse border wall is the wall")
{
  auto sld = bordered(10);
  Rng rng(2);
  auto cat = categorize(compute_stats(sld), sld, rng);
  CHECK(cat.wall == "wall");
}

TEST_CASE("small immovables become score and spike")
{
  auto g = parse_game(kGame);
  g.sprites.push_back({"thorn", SpriteKind::Immovable, {}});
  g.mapping.entries['t'] = {"thorn", "floor"};
  auto level = parse_level("A.........\n..g.......\n......t...\n..........\n", g.mapping);
  SLDescription sld(g, level);
  Rng rng(4);
  auto cat = categorize(compute_stats(sld), sld, rng);
  REQUIRE(cat.score);
  REQUIRE(cat.spike);
  CHECK(*cat.score != *cat.spike);
  CHECK(std::find(cat.collectibles.begin(), cat.collectibles.end(), *cat.score) != cat.collectibles.end());
}

TEST_CASE("level without avatar cannot be categorized")
{
  auto g = parse_game(kGame);
  SLDescription sld(g, parse_level("..\n..\n", g.mapping));
  Rng rng(1);
  CHECK_THROWS_AS(categorize(compute_stats(sld), sld, rng), std::invalid_argument);
}

TEST_CASE("simulate a candidate ruleset")
{
  const auto& f = fixture("aliens");
  SLDescription sld(f.game, f.level);
  auto dn = make_agent("donothing");
  auto out = sld.simulate(f.game.ruleset, *dn, 1, 5000);
  CHECK(out.status == GameStatus::Lose);
  CHECK(out.steps == 628);
}
