#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace gvgrg;

namespace {

SLDescription sld_of(const std::string& name)
{
  const auto& f = fixture(name);
  return SLDescription(f.game, f.level);
}

int avatar_death_rules(const Ruleset& r, const std::string& avatar)
{
  int n = 0;
  for (const auto& t : r.terminations)
    if (!t.win && t.kind == TerminationKind::SpriteCounter && t.sprites == std::vector<std::string>{avatar} &&
        t.limit == 0)
      ++n;
  return n;
}

int count_outcome(const Ruleset& r, bool win)
{
  return static_cast<int>(
      std::count_if(r.terminations.begin(), r.terminations.end(), [&](const TerminationRule& t) { return t.win == win; }));
}

} // namespace

TEST_CASE("random generator postconditions")
{
  for (const auto& name : fixture_names()) {
    auto sld = sld_of(name);
    auto avatar = sld.game().avatar().name;
    for (int seed = 0; seed < 300; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      auto r = generate_random(sld, rng);
      auto report = validate_ruleset(sld.game(), r, &sld.level());
      CHECK_MESSAGE(report.errors.empty(), name << " seed " << seed);
      CHECK(r.interactions.size() >= 1);
      CHECK(r.interactions.size() <= static_cast<std::size_t>(kMaxRandomInteractions));
      CHECK(avatar_death_rules(r, avatar) == 1);
      CHECK(count_outcome(r, false) == 1);
      CHECK(count_outcome(r, true) == 1);
      for (const auto& i : r.interactions) {
        CHECK(i.score_change >= kMinScoreChange);
        CHECK(i.score_change <= kMaxScoreChange);
        CHECK(sld.in_level(i.first));
      }
    }
  }
}

TEST_CASE("random aliens rulesets are small with a timeout or counter win")
{
  auto sld = sld_of("aliens");
  int timeouts = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    auto r = generate_random(sld, rng);
    for (const auto& t : r.terminations)
      if (t.win && t.kind == TerminationKind::Timeout) {
        ++timeouts;
        CHECK(t.limit >= kMinTimeout);
        CHECK(t.limit <= kMaxTimeout);
      }
  }
  CHECK(timeouts > 20);
  CHECK(timeouts < 80);
}

TEST_CASE("constructive generator postconditions")
{
  for (const auto& name : fixture_names()) {
    auto sld = sld_of(name);
    auto avatar = sld.game().avatar().name;
    for (int seed = 0; seed < 50; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      auto r = generate_constructive(sld, rng);
      auto report = validate_ruleset(sld.game(), r, &sld.level());
      CHECK_MESSAGE(report.errors.empty(), name << " seed " << seed);
      CHECK(avatar_death_rules(r, avatar) == 1);
      CHECK(count_outcome(r, false) == 1);
      CHECK(count_outcome(r, true) >= 1);
      CHECK(cleanse(r) == r);
    }
  }
}

TEST_CASE("constructive aliens can require the aliens dead")
{
  auto sld = sld_of("aliens");
  int alien_wins = 0;
  for (int seed = 0; seed < 40; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    auto r = generate_constructive(sld, rng);
    for (const auto& t : r.terminations)
      if (t.win && std::find(t.sprites.begin(), t.sprites.end(), "alien") != t.sprites.end()) {
        ++alien_wins;
        // the portal keeps producing aliens, so it has to be counted too
        CHECK(std::find(t.sprites.begin(), t.sprites.end(), "portal") != t.sprites.end());
      }
  }
  CHECK(alien_wins > 0);
}

TEST_CASE("constructive generator on a bare level")
{
  const char* text = R"(BasicGame
    SpriteSet
        wall > Immovable
        avatar > MovingAvatar
    LevelMapping
        w > wall
        A > avatar
    InteractionSet
    TerminationSet
        SpriteCounter stype=avatar limit=0 win=False
        Timeout limit=100 win=True
)";
  auto g = parse_game(text);
  SLDescription sld(g, parse_level("wwwww\nw A w\nwwwww\n", g.mapping));
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    auto r = generate_constructive(sld, rng);
    for (const auto& i : r.interactions) {
      CHECK(i.first == "avatar");
      CHECK((i.second == "wall" || i.second == std::string(kEos)));
    }
    REQUIRE(r.terminations.size() == 2);
    CHECK(r.terminations[0].kind == TerminationKind::Timeout);
  }
}

TEST_CASE("generators are deterministic")
{
  auto sld = sld_of("boulderdash");
  Rng a(5), b(5);
  CHECK(generate_random(sld, a) == generate_random(sld, b));
  CHECK(generate_constructive(sld, a) == generate_constructive(sld, b));
}

TEST_CASE("cleanse")
{
  InteractionRule a{"avatar", "alien", Effect::KillSprite, -1, {}};
  InteractionRule b{"alien", "sam", Effect::KillSprite, 2, {}};
  TerminationRule t{TerminationKind::Timeout, {}, 100, true};
  Ruleset clean{{a, b}, {t}};
  CHECK(cleanse(clean) == clean);
  Ruleset dup{{a, b, a}, {t, t}};
  CHECK(cleanse(dup) == clean);

  auto sld = sld_of("solarfox");
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    auto r = generate_random(sld, rng);
    r.interactions.insert(r.interactions.end(), r.interactions.begin(), r.interactions.end());
    std::istringstream lines(serialize_ruleset(cleanse(r)));
    std::set<std::string> seen;
    std::string line;
    while (std::getline(lines, line)) CHECK(seen.insert(line).second);
  }
}

TEST_CASE("valid interactions only hold runnable rules")
{
  const auto& game = fixture("aliens").game;
  Rng rng(3);
  auto options = valid_interactions(game, "avatar", "alien", 1, rng);
  CHECK_FALSE(options.empty());
  for (const auto& r : options) {
    CHECK_FALSE(interaction_error(game, r));
    CHECK(r.score_change == 1);
  }
  std::vector<std::string> pool{"portal", std::string(kEos)};
  for (int i = 0; i < 50; ++i) {
    auto r = random_interaction(game, pool, rng);
    REQUIRE(r);
    CHECK(r->first == "portal");
    auto t = random_termination(game, {"alien", "bomb", "portal"}, true, rng);
    CHECK_FALSE(termination_error(game, t));
  }
}
