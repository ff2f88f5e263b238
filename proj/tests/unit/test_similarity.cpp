#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"
#include "gvgrg/similarity.hpp"

#include <doctest.h>

using namespace gvgrg;

namespace {

Ruleset one_rule(InteractionRule r)
{
  Ruleset out;
  out.interactions.push_back(std::move(r));
  return out;
}

} // namespace

TEST_CASE("rule parts")
{
  InteractionRule r{"avatar", "alien", Effect::TransformTo, -1, {{"stype", "bomb"}}};
  auto parts = rule_parts(r);
  CHECK(parts.size() == 5);
  CHECK(std::find(parts.begin(), parts.end(), "effect=transformTo") != parts.end());
  TerminationRule t{TerminationKind::MultiSpriteCounter, {"portal", "alien"}, 0, true};
  CHECK(rule_parts(t).size() == 5);
}

TEST_CASE("distance extremes")
{
  const auto& f = fixture("aliens");
  CHECK(ruleset_distance(f.game.ruleset, f.game.ruleset) == 0.0);
  CHECK(ruleset_distance(Ruleset{}, Ruleset{}) == 0.0);
  auto a = one_rule({"avatar", "alien", Effect::KillSprite, -1, {}});
  auto b = one_rule({"sam", "base", Effect::StepBack, 2, {}});
  CHECK(ruleset_distance(a, b) == 1.0);
  CHECK(ruleset_distance(a, Ruleset{}) == 1.0);
  CHECK(ruleset_distance(Ruleset{}, a) == 1.0);
}

TEST_CASE("one differing part out of k")
{
  auto a = one_rule({"avatar", "alien", Effect::KillSprite, -1, {}});
  auto b = one_rule({"avatar", "alien", Effect::KillSprite, 2, {}});
  CHECK(ruleset_distance(a, b) == doctest::Approx(1.0 / 4.0));
  auto c = one_rule({"avatar", "alien", Effect::TransformTo, -1, {{"stype", "bomb"}}});
  auto d = one_rule({"avatar", "alien", Effect::TransformTo, -1, {{"stype", "sam"}}});
  CHECK(ruleset_distance(c, d) == doctest::Approx(1.0 / 5.0));
}

TEST_CASE("distance is symmetric and bounded")
{
  const auto& f = fixture("boulderdash");
  SLDescription sld(f.game, f.level);
  Rng rng(4);
  std::vector<Ruleset> sets;
  for (int i = 0; i < 30; ++i) sets.push_back(i % 2 ? generate_random(sld, rng) : generate_constructive(sld, rng));
  for (const auto& a : sets)
    for (const auto& b : sets) {
      double d = ruleset_distance(a, b);
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      CHECK(d == ruleset_distance(b, a));
    }
}

TEST_CASE("min distance profile")
{
  const auto& g = fixture("aliens").game.ruleset;
  const auto& h = fixture("solarfox").game.ruleset;
  auto two = min_distance_profile({g, g});
  CHECK(two.min_distances == std::vector<double>{0.0, 0.0});
  auto three = min_distance_profile({g, g, h});
  REQUIRE(three.min_distances.size() == 3);
  CHECK(three.min_distances[0] == 0.0);
  CHECK(three.min_distances[1] == 0.0);
  CHECK(three.min_distances[2] == doctest::Approx(ruleset_distance(g, h)));
  CHECK_THROWS_AS(min_distance_profile({g}), std::invalid_argument);
}

TEST_CASE("profile csv")
{
  DistanceProfile p = min_distance_profile({fixture("aliens").game.ruleset, fixture("aliens").game.ruleset});
  p.generator = "constructive";
  p.game = "aliens";
  p.names = {"a.txt", "b.txt"};
  CHECK(profile_csv({p}) == "generator,game,minDistance\nconstructive,a.txt,0\nconstructive,b.txt,0\n");
}
