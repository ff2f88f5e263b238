#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"
#include "gvgrg/vgdl.hpp"

#include <doctest.h>

using namespace gvgrg;

namespace {

const char* kTiny = R"(BasicGame
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

InteractionRule rule(std::string a, std::string b, Effect e, int score = 0, ParamMap p = {})
{
  return {std::move(a), std::move(b), e, score, std::move(p)};
}

} // namespace

TEST_CASE("fixture games parse with the expected avatars")
{
  CHECK(fixture("aliens").game.avatar().kind == SpriteKind::FlakAvatar);
  CHECK(fixture("Boulderdash").game.avatar().kind == SpriteKind::ShootAvatar);
  CHECK(fixture("solarfox").game.avatar().kind == SpriteKind::OngoingAvatar);
  CHECK_THROWS_AS(fixture("pacman"), std::invalid_argument);
}

TEST_CASE("empty interaction section")
{
  auto g = parse_game(kTiny);
  CHECK(g.ruleset.interactions.empty());
  CHECK(g.ruleset.terminations.size() == 2);
  CHECK(g.sprites.size() == 2);
}

TEST_CASE("unknown sprite kind names its line")
{
  std::string text = "BasicGame\n    SpriteSet\n        avatar > UnknownKind\n";
  try {
    parse_game(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("UnknownKind") != std::string::npos);
  }
}

TEST_CASE("game-level structural rules")
{
  auto bad = [](const std::string& s) { CHECK_THROWS_AS(parse_game(s), ParseError); };
  // duplicate name
  bad("BasicGame\n    SpriteSet\n        a > Immovable\n        a > Immovable\n        b > MovingAvatar\n");
  // dangling stype
  bad("BasicGame\n    SpriteSet\n        b > FlakAvatar stype=ghost\n");
  // prob outside [0,1]
  bad("BasicGame\n    SpriteSet\n        s > SpawnPoint stype=b prob=1.5\n        b > MovingAvatar\n");
  // EOS as first sprite
  bad("BasicGame\n    SpriteSet\n        b > MovingAvatar\n    InteractionSet\n        EOS b > killSprite\n");
  // transformTo without stype
  bad("BasicGame\n    SpriteSet\n        b > MovingAvatar\n        w > Immovable\n    InteractionSet\n        w b > transformTo\n");
  // SpriteCounter with two sprites, negative limit
  CHECK_THROWS_AS(parse_ruleset("TerminationSet\n    SpriteCounter stype1=a stype2=b limit=0 win=True\n"), ParseError);
  CHECK_THROWS_AS(parse_ruleset("TerminationSet\n    MultiSpriteCounter stype1=a limit=0 win=True\n"), ParseError);
  CHECK_THROWS_AS(parse_ruleset("TerminationSet\n    Timeout stype=a limit=10 win=True\n"), ParseError);
  CHECK_THROWS_AS(parse_ruleset("TerminationSet\n    Timeout limit=-1 win=True\n"), ParseError);
}

TEST_CASE("parse level")
{
  LevelMapping m;
  m.entries['A'] = {"avatar"};
  auto one = parse_level("A", m);
  CHECK(one.width == 1);
  CHECK(one.height == 1);
  CHECK(one.at(0, 0) == std::vector<std::string>{"avatar"});

  CHECK_THROWS_AS(parse_level("AAAAA\nAAAA\n", m), ParseError);
  CHECK_THROWS_AS(parse_level("AZ\n", m), ParseError);

  const auto& sf = fixture("solarfox").level;
  const auto& bd = fixture("boulderdash").level;
  CHECK(sf.width * sf.height < bd.width * bd.height);
}

TEST_CASE("serialize ruleset")
{
  auto empty = serialize_ruleset({});
  CHECK(empty.find("InteractionSet") != std::string::npos);
  CHECK(empty.find("TerminationSet") != std::string::npos);
  CHECK(parse_ruleset(empty) == Ruleset{});

  CHECK(serialize_rule(rule("avatar", "alien", Effect::KillSprite, -1)) == "avatar alien > killSprite scoreChange=-1");
  TerminationRule t{TerminationKind::MultiSpriteCounter, {"portal", "alien"}, 0, true};
  CHECK(serialize_rule(t) == "MultiSpriteCounter stype1=portal stype2=alien limit=0 win=True");
}

TEST_CASE("generator output round-trips through the text format")
{
  int n = 0;
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    SLDescription sld(f.game, f.level);
    Rng rng(derive_seed(42, n));
    for (int i = 0; i < 40; ++i) {
      Ruleset r = i % 2 ? generate_random(sld, rng) : generate_constructive(sld, rng);
      CHECK(parse_ruleset(serialize_ruleset(r)) == r);
      ++n;
    }
  }
  CHECK(n == 120);
}

TEST_CASE("fixture games round-trip")
{
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    auto again = parse_game(serialize_game(f.game));
    CHECK(again.sprites == f.game.sprites);
    CHECK(again.ruleset == f.game.ruleset);
    CHECK(again.mapping == f.game.mapping);
    CHECK(parse_level(serialize_level(f.level, f.game.mapping), f.game.mapping) == f.level);
  }
}

TEST_CASE("validate ruleset")
{
  for (const auto& name : fixture_names()) {
    const auto& f = fixture(name);
    auto report = validate_ruleset(f.game, f.game.ruleset, &f.level);
    CHECK_MESSAGE(report.errors.empty(), name);
    CHECK_MESSAGE(report.warnings.empty(), name);
  }

  const auto& a = fixture("aliens");
  Ruleset ghost = a.game.ruleset;
  ghost.interactions.push_back(rule("avatar", "ghost", Effect::KillSprite));
  CHECK(validate_ruleset(a.game, ghost).errors.size() == 1);

  Ruleset dup = a.game.ruleset;
  dup.interactions.push_back(dup.interactions.front());
  auto report = validate_ruleset(a.game, dup);
  CHECK(report.errors.empty());
  CHECK(report.warnings.size() >= 1);

  Ruleset no_win = a.game.ruleset;
  std::erase_if(no_win.terminations, [](const TerminationRule& t) { return t.win; });
  CHECK_FALSE(validate_ruleset(a.game, no_win).ok());
}

TEST_CASE("reachable sprites follow spawners")
{
  const auto& a = fixture("aliens");
  auto names = reachable_sprites(a.game, a.game.ruleset, a.level);
  for (const char* n : {"base", "avatar", "sam", "bomb", "alien", "portal"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}
