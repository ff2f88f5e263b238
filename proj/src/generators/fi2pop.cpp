#include "gvgrg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gvgrg {

namespace {

double rank_key(const Chromosome& c) { return c.feasible ? c.fitness : c.feasibility; }

// Rank selection: the best of n members has weight n, the worst weight 1.
const Chromosome& select_rank(const std::vector<Chromosome>& pop, Rng& rng)
{
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rank_key(pop[a]) < rank_key(pop[b]); });
  const double n = static_cast<double>(pop.size());
  double u = uniform01(rng) * n * (n + 1) / 2.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    u -= static_cast<double>(r + 1);
    if (u < 0.0) return pop[order[r]];
  }
  return pop[order.back()];
}

Chromosome fresh(Ruleset r)
{
  Chromosome c;
  c.ruleset = cleanse(r);
  return c;
}

std::vector<Chromosome> breed(const std::vector<Chromosome>& parents, std::size_t count, const SLDescription& sld,
                              const EvolutionConfig& config, Rng& rng)
{
  std::vector<Chromosome> out;
  while (out.size() < count) {
    Chromosome a = fresh(select_rank(parents, rng).ruleset);
    Chromosome b = fresh(select_rank(parents, rng).ruleset);
    if (bernoulli(rng, config.crossover_prob) && a.ruleset.size() > 0 && b.ruleset.size() > 0) {
      std::tie(a, b) = crossover_one_point(a, b, rng);
    } else {
      if (bernoulli(rng, config.mutation_prob)) a = mutate(a, sld, rng, config.max_mutations);
      if (bernoulli(rng, config.mutation_prob)) b = mutate(b, sld, rng, config.max_mutations);
    }
    out.push_back(std::move(a));
    if (out.size() < count) out.push_back(std::move(b));
  }
  return out;
}

void route(Population& pop, Chromosome c)
{
  (c.feasible ? pop.feasible : pop.infeasible).push_back(std::move(c));
}

} // namespace

const Chromosome* elite(const Population& pop)
{
  const Chromosome* best = nullptr;
  for (const auto& c : pop.feasible)
    if (!best || c.fitness > best->fitness) best = &c;
  if (best) return best;
  for (const auto& c : pop.infeasible)
    if (!best || c.feasibility > best->feasibility) best = &c;
  return best;
}

Population initial_population(const SLDescription& sld, const EvolutionConfig& config, Rng& rng)
{
  config.check();
  const int n = config.population_size;
  int n_random = static_cast<int>(std::lround(config.init_random_frac * n));
  int n_constructive = static_cast<int>(std::lround(config.init_constructive_frac * n));
  n_random = std::min(n_random, n);
  n_constructive = std::min(n_constructive, n - n_random);
  int n_mutated = n - n_random - n_constructive;

  std::vector<Chromosome> members;
  for (int i = 0; i < n_random; ++i) members.push_back(fresh(generate_random(sld, rng)));
  for (int i = 0; i < n_constructive; ++i) members.push_back(fresh(generate_constructive(sld, rng)));
  for (int i = 0; i < n_mutated; ++i) {
    Chromosome base = fresh(generate_constructive(sld, rng));
    members.push_back(mutate(base, sld, rng, config.max_mutations));
  }

  Population pop;
  for (std::size_t i = 0; i < members.size(); ++i) {
    evaluate(members[i], sld, config, derive_seed(config.seed, i, 0));
    route(pop, std::move(members[i]));
  }
  return pop;
}

std::optional<Population> evolve_generation(const Population& pop, const SLDescription& sld,
                                            const EvolutionConfig& config, Rng& rng,
                                            std::optional<Clock::time_point> deadline)
{
  const Chromosome* best = elite(pop);
  if (!best) return pop;
  bool elite_feasible = best->feasible;
  std::size_t from_f = pop.feasible.size() - (elite_feasible ? 1 : 0);
  std::size_t from_i = pop.infeasible.size() - (elite_feasible ? 0 : 1);

  std::vector<Chromosome> offspring;
  if (from_f > 0) offspring = breed(pop.feasible, from_f, sld, config, rng);
  if (from_i > 0) {
    auto more = breed(pop.infeasible, from_i, sld, config, rng);
    std::move(more.begin(), more.end(), std::back_inserter(offspring));
  }

  Population next;
  next.generation = pop.generation + 1;
  route(next, *best);
  for (std::size_t i = 0; i < offspring.size(); ++i) {
    if (deadline && Clock::now() >= *deadline) return std::nullopt;
    evaluate(offspring[i], sld, config, derive_seed(config.seed, i, static_cast<std::uint64_t>(next.generation)));
    route(next, std::move(offspring[i]));
  }
  return next;
}

SearchResult generate_search(const SLDescription& sld, const EvolutionConfig& config, const GenerationHook& hook)
{
  config.check();
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(config.time_budget_s));
  Rng rng(config.seed);
  SearchResult result;
  Population pop = initial_population(sld, config, rng);
  auto record = [&] {
    const Chromosome* e = elite(pop);
    result.elite_history.push_back({e->feasible, e->fitness, e->feasibility});
    if (hook) hook(pop);
  };
  record();
  while (config.max_generations == 0 || pop.generation < config.max_generations) {
    if (Clock::now() >= deadline) break;
    auto next = evolve_generation(pop, sld, config, rng, deadline);
    if (!next) break;
    pop = std::move(*next);
    record();
  }
  result.generations = pop.generation;
  result.best = *elite(pop);
  result.ruleset = result.best.ruleset;
  return result;
}

} // namespace gvgrg
