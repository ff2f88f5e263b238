#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"

#include <doctest.h>

using namespace gvgrg;

namespace {

SLDescription aliens()
{
  const auto& f = fixture("aliens");
  return SLDescription(f.game, f.level);
}

EvolutionConfig small()
{
  EvolutionConfig c;
  c.population_size = 10;
  c.playthroughs = 1;
  c.smart_budget = {4, 4, 1.41, 0};
  c.baseline_budget = {4, 4, 1.41, 0};
  c.max_frames = 200;
  c.seed = 3;
  return c;
}

bool not_worse(const EliteRecord& now, const EliteRecord& before)
{
  if (now.feasible != before.feasible) return now.feasible;
  return now.feasible ? now.fitness >= before.fitness : now.feasibility >= before.feasibility;
}

template <typename T>
bool contains(const std::vector<T>& v, const T& x)
{
  return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

TEST_CASE("initial population mix and routing")
{
  auto sld = aliens();
  auto c = small();
  Rng rng(c.seed);
  auto pop = initial_population(sld, c, rng);
  CHECK(pop.size() == 10);
  CHECK(pop.generation == 0);
  for (const auto& m : pop.feasible) {
    CHECK(m.evaluated);
    CHECK(m.feasible);
    CHECK(constraints_hold(m.measures, c));
  }
  for (const auto& m : pop.infeasible) {
    CHECK(m.evaluated);
    CHECK_FALSE(constraints_hold(m.measures, c));
    CHECK(m.fitness == 0.0);
  }
  const Chromosome* e = elite(pop);
  REQUIRE(e);
  for (const auto& m : pop.feasible) CHECK(m.fitness <= e->fitness);
}

TEST_CASE("generations conserve size and keep the elite")
{
  auto sld = aliens();
  auto c = small();
  Rng rng(c.seed);
  auto pop = initial_population(sld, c, rng);
  for (int g = 1; g <= 3; ++g) {
    const Chromosome before = *elite(pop);
    auto next = evolve_generation(pop, sld, c, rng);
    REQUIRE(next);
    CHECK(next->size() == 10);
    CHECK(next->generation == g);
    const Chromosome& after = *elite(*next);
    CHECK(not_worse({after.feasible, after.fitness, after.feasibility}, {before.feasible, before.fitness, before.feasibility}));
    auto& home = before.feasible ? next->feasible : next->infeasible;
    REQUIRE_FALSE(home.empty());
    CHECK(home.front().ruleset == before.ruleset);
    CHECK(home.front().fitness == before.fitness);
    pop = std::move(*next);
  }
}

TEST_CASE("all-infeasible population keeps its size")
{
  auto sld = aliens();
  auto c = small();
  Population pop;
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    Chromosome m;
    m.ruleset.interactions = {{"avatar", "ghost", Effect::KillSprite, 0, {}}};
    evaluate(m, sld, c, static_cast<std::uint64_t>(i));
    REQUIRE_FALSE(m.feasible);
    pop.infeasible.push_back(m);
  }
  auto next = evolve_generation(pop, sld, c, rng);
  REQUIRE(next);
  CHECK(next->size() == 10);
}

TEST_CASE("no variation means clones of parents")
{
  auto sld = aliens();
  auto c = small();
  c.crossover_prob = 0.0;
  c.mutation_prob = 0.0;
  Rng rng(c.seed);
  auto pop = initial_population(sld, c, rng);
  std::vector<Ruleset> parents;
  for (const auto* side : {&pop.feasible, &pop.infeasible})
    for (const auto& m : *side) parents.push_back(m.ruleset);
  auto next = evolve_generation(pop, sld, c, rng);
  REQUIRE(next);
  for (const auto* side : {&next->feasible, &next->infeasible})
    for (const auto& m : *side) CHECK(contains(parents, m.ruleset));
}

TEST_CASE("passed deadline stops a generation")
{
  auto sld = aliens();
  auto c = small();
  Rng rng(c.seed);
  auto pop = initial_population(sld, c, rng);
  CHECK_FALSE(evolve_generation(pop, sld, c, rng, Clock::now()));
}

TEST_CASE("tiny budget returns the best initial member")
{
  auto sld = aliens();
  auto c = small();
  c.time_budget_s = 1e-6;
  auto res = generate_search(sld, c);
  CHECK(res.generations == 0);
  REQUIRE(res.elite_history.size() == 1);
  Rng rng(c.seed);
  auto pop = initial_population(sld, c, rng);
  CHECK(res.ruleset == elite(pop)->ruleset);
}

TEST_CASE("search is deterministic and its elite never regresses")
{
  auto sld = aliens();
  auto c = small();
  c.max_generations = 3;
  c.time_budget_s = 600;
  int hooks = 0;
  auto a = generate_search(sld, c, [&](const Population& p) {
    ++hooks;
    CHECK(p.size() == 10);
  });
  auto b = generate_search(sld, c);
  CHECK(hooks == 4);
  CHECK(a.generations == 3);
  CHECK(a.ruleset == b.ruleset);
  REQUIRE(a.elite_history.size() == 4);
  for (std::size_t i = 1; i < a.elite_history.size(); ++i) CHECK(not_worse(a.elite_history[i], a.elite_history[i - 1]));
  CHECK(validate_ruleset(sld.game(), a.ruleset).ok());
}
