#pragma once

#include "gvgrg/agents.hpp"
#include "gvgrg/level_analyzer.hpp"
#include "gvgrg/random.hpp"
#include "gvgrg/vgdl.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gvgrg {

// ---- rule generators ------------------------------------------------------

inline constexpr int kMaxRandomInteractions = 5;
inline constexpr int kMinScoreChange = -2;
inline constexpr int kMaxScoreChange = 2;
inline constexpr int kMinTimeout = 500;
inline constexpr int kMaxTimeout = 1500;

Ruleset generate_random(const SLDescription& sld, Rng& rng);
Ruleset generate_constructive(const SLDescription& sld, Rng& rng);

/// Drops repeated rules, keeping the first of each and the original order.
Ruleset cleanse(const Ruleset& ruleset);

/// Effects that give a runnable rule for the pair, with their parameters
/// drawn from `rng` (transformTo gets a random non-avatar stype).
std::vector<InteractionRule> valid_interactions(const GameDescription& game, const std::string& first,
                                                const std::string& second, int score_change, Rng& rng);
/// A random runnable rule over `pool` (which may include EOS for the second
/// sprite); nullopt if `pool` has no usable first sprite.
std::optional<InteractionRule> random_interaction(const GameDescription& game, const std::vector<std::string>& pool,
                                                  Rng& rng);
TerminationRule random_termination(const GameDescription& game, const std::vector<std::string>& pool, bool win,
                                   Rng& rng);

// ---- fitness --------------------------------------------------------------

double sigmoid(double x);
/// Weighted blend of error-free, do-nothing survival, warning-free and
/// on-screen terms; 1 when every measure is ideal.
double feasibility_score(int n_e, int n_dna, int n_w, int n_bf, int n_f);
double agent_objective(double win_rate, double avg_score);
double relative_performance(double o_smart, double o_baseline, double o_random);
/// Throws std::invalid_argument when total is 0.
double rule_coverage(int unique, int total);
double game_length_score(double avg_frames, double threshold = 500.0);
double overall_fitness(double s_final, double s_rules, double s_length);

struct EvolutionConfig {
  int population_size = 50;
  double init_random_frac = 0.4;
  double init_constructive_frac = 0.2;
  double init_mutated_frac = 0.4;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  int max_mutations = 2;
  int elitism = 1;
  double bad_frame_threshold = 0.3;
  int do_nothing_frames = 40;
  int playthroughs = 3;
  int min_game_frames = 500;
  double time_budget_s = 300.0;
  std::uint64_t seed = 1;

  // Evaluation settings.
  AgentBudget smart_budget{10, 6, 1.41, 0.0};
  AgentBudget baseline_budget{10, 6, 1.41, 0.0};
  int max_frames = 1000;
  /// Stop after this many generations; 0 means run until the time budget.
  int max_generations = 0;

  /// Throws std::invalid_argument describing the first bad field.
  void check() const;
};

/// Reads key=value lines ('#' comments allowed) over the defaults. Keys match
/// the field names; agent budgets use smart_iterations, smart_depth,
/// baseline_iterations and baseline_depth.
EvolutionConfig parse_config(std::string_view text);
std::string serialize_config(const EvolutionConfig& config);

struct ConstraintMeasures {
  int n_e = 0;
  int n_w = 0;
  int n_dna = 0;
  int n_bf = 0;
  int n_f = 1;

  bool operator==(const ConstraintMeasures&) const = default;
};

struct Chromosome {
  Ruleset ruleset;
  bool feasible = false;
  ConstraintMeasures measures;
  double feasibility = 0.0;
  double fitness = 0.0;
  bool evaluated = false;
};

struct ConstraintResult {
  bool feasible = false;
  ConstraintMeasures measures;
};

/// Everything one evaluation measures. The constraint check and the fitness
/// share the same play-throughs.
struct Evaluation {
  ConstraintResult constraints;
  double feasibility = 0.0;
  double fitness = 0.0;
  double o_smart = 0.0;
  double o_baseline = 0.0;
  double o_random = 0.0;
  int unique_rules = 0;
  double avg_frames = 0.0;
};

bool constraints_hold(const ConstraintMeasures& m, const EvolutionConfig& config);
Evaluation evaluate_ruleset(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config,
                            std::uint64_t seed);
ConstraintResult check_constraints(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config,
                                   Rng& rng);
/// Fitness of a ruleset, 0 when it is infeasible.
double chromosome_fitness(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config, Rng& rng);
void evaluate(Chromosome& c, const SLDescription& sld, const EvolutionConfig& config, std::uint64_t seed);

// ---- variation ------------------------------------------------------------

/// Cuts each parent's interactions-then-terminations sequence at its own
/// index and swaps the tails. Children are cleansed.
std::pair<Ruleset, Ruleset> crossover_at(const Ruleset& a, const Ruleset& b, std::size_t cut_a, std::size_t cut_b);
std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& a, const Chromosome& b, Rng& rng);

/// One to `max_rounds` rounds of insert/delete/modify on rules or parameters.
/// Never deletes the last winning or losing termination.
Ruleset mutate(const Ruleset& ruleset, const GameDescription& game, Rng& rng, int max_rounds = 2);
Chromosome mutate(const Chromosome& c, const SLDescription& sld, Rng& rng, int max_rounds = 2);

// ---- search ---------------------------------------------------------------

struct Population {
  std::vector<Chromosome> feasible;
  std::vector<Chromosome> infeasible;
  int generation = 0;

  std::size_t size() const { return feasible.size() + infeasible.size(); }
};

/// Best feasible by cached fitness, else best infeasible by feasibility.
const Chromosome* elite(const Population& pop);

Population initial_population(const SLDescription& sld, const EvolutionConfig& config, Rng& rng);

using Clock = std::chrono::steady_clock;

/// One FI2Pop generation. Returns nullopt if `deadline` passes while the
/// offspring are being evaluated.
std::optional<Population> evolve_generation(const Population& pop, const SLDescription& sld,
                                            const EvolutionConfig& config, Rng& rng,
                                            std::optional<Clock::time_point> deadline = std::nullopt);

struct EliteRecord {
  bool feasible = false;
  double fitness = 0.0;
  double feasibility = 0.0;
};

struct SearchResult {
  Ruleset ruleset;
  Chromosome best;
  int generations = 0;
  /// Elite after initialisation and after each completed generation.
  std::vector<EliteRecord> elite_history;
};

using GenerationHook = std::function<void(const Population&)>;

SearchResult generate_search(const SLDescription& sld, const EvolutionConfig& config,
                             const GenerationHook& hook = {});

} // namespace gvgrg
