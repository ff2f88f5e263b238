#include "gvgrg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gvgrg {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double feasibility_score(int n_e, int n_dna, int n_w, int n_bf, int n_f)
{
  if (n_f <= 0) throw std::invalid_argument("n_f must be positive");
  return 0.3 / (n_e + 1) + 0.2 * n_dna / 40.0 + 0.2 / (n_w + 1) +
         0.3 * (1.0 - static_cast<double>(n_bf) / n_f);
}

double agent_objective(double win_rate, double avg_score) { return 0.9 * win_rate + 0.1 * sigmoid(avg_score); }

double relative_performance(double o_smart, double o_baseline, double o_random)
{
  return (o_smart - o_baseline) * (o_baseline - o_random);
}

double rule_coverage(int unique, int total)
{
  if (total <= 0) throw std::invalid_argument("rule coverage needs at least one rule");
  return static_cast<double>(unique) / total;
}

double game_length_score(double avg_frames, double threshold) { return std::min(1.0, avg_frames / threshold); }

double overall_fitness(double s_final, double s_rules, double s_length) { return s_final * s_rules * s_length; }

bool constraints_hold(const ConstraintMeasures& m, const EvolutionConfig& config)
{
  return m.n_e == 0 && m.n_dna >= config.do_nothing_frames &&
         static_cast<double>(m.n_bf) <= config.bad_frame_threshold * m.n_f;
}

namespace {

struct AgentRuns {
  double objective = 0.0;
  int best_steps = 0;
};

bool better(const SimulationOutcome& a, const SimulationOutcome& b)
{
  bool wa = a.status == GameStatus::Win;
  bool wb = b.status == GameStatus::Win;
  if (wa != wb) return wa;
  if (a.score != b.score) return a.score > b.score;
  return a.steps > b.steps;
}

} // namespace

Evaluation evaluate_ruleset(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config,
                            std::uint64_t seed)
{
  Evaluation ev;
  auto& m = ev.constraints.measures;
  auto report = validate_ruleset(sld.game(), ruleset, &sld.level());
  m.n_e = static_cast<int>(report.errors.size());
  m.n_w = static_cast<int>(report.warnings.size());
  if (m.n_e > 0) {
    // Nothing can be played; count the unplayed frame as bad.
    m.n_dna = 0;
    m.n_bf = 1;
    m.n_f = 1;
    ev.feasibility = feasibility_score(m.n_e, m.n_dna, m.n_w, m.n_bf, m.n_f);
    return ev;
  }
  auto game = CompiledGame::compile(sld.with_ruleset(ruleset), sld.level());

  int errors = 0;
  auto dn = make_agent("donothing");
  auto o = simulate(game, *dn, config.do_nothing_frames, derive_seed(seed, 1));
  errors += o.errors;
  m.n_dna = o.status == GameStatus::Lose ? std::max(0, o.steps - 1) : config.do_nothing_frames;

  std::set<int> triggered;
  long frames = 0;
  int plays = 0;
  m.n_bf = 0;
  m.n_f = 0;
  auto run = [&](Agent& agent, int cap, std::uint64_t stream) {
    double wins = 0.0;
    double score = 0.0;
    SimulationOutcome best;
    for (int p = 0; p < config.playthroughs; ++p) {
      auto out = simulate(game, agent, cap, derive_seed(seed, stream, static_cast<std::uint64_t>(p)));
      errors += out.errors;
      m.n_bf += out.bad_frames;
      m.n_f += out.steps;
      frames += out.steps;
      ++plays;
      triggered.insert(out.triggered_rules.begin(), out.triggered_rules.end());
      wins += out.status == GameStatus::Win ? 1.0 : 0.0;
      score += out.score;
      if (p == 0 || better(out, best)) best = out;
    }
    AgentRuns r;
    r.objective = agent_objective(wins / config.playthroughs, score / config.playthroughs);
    r.best_steps = std::max(1, best.steps);
    return r;
  };

  auto smart = make_agent("olets", config.smart_budget);
  auto baseline = make_agent("mcts", config.baseline_budget);
  auto random = make_agent("random");
  auto s = run(*smart, config.max_frames, 2);
  auto b = run(*baseline, s.best_steps, 3);
  auto r = run(*random, s.best_steps, 4);
  m.n_e += errors;
  m.n_f = std::max(1, m.n_f);
  m.n_bf = std::min(m.n_bf, m.n_f);

  ev.constraints.feasible = constraints_hold(m, config);
  ev.feasibility = feasibility_score(m.n_e, m.n_dna, m.n_w, m.n_bf, m.n_f);
  ev.o_smart = s.objective;
  ev.o_baseline = b.objective;
  ev.o_random = r.objective;
  ev.unique_rules = static_cast<int>(triggered.size());
  ev.avg_frames = plays > 0 ? static_cast<double>(frames) / plays : 0.0;
  if (ev.constraints.feasible && !ruleset.interactions.empty()) {
    ev.fitness = overall_fitness(relative_performance(ev.o_smart, ev.o_baseline, ev.o_random),
                                 rule_coverage(ev.unique_rules, static_cast<int>(ruleset.interactions.size())),
                                 game_length_score(ev.avg_frames, config.min_game_frames));
  }
  return ev;
}

ConstraintResult check_constraints(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config,
                                   Rng& rng)
{
  return evaluate_ruleset(sld, ruleset, config, rng()).constraints;
}

double chromosome_fitness(const SLDescription& sld, const Ruleset& ruleset, const EvolutionConfig& config, Rng& rng)
{
  return evaluate_ruleset(sld, ruleset, config, rng()).fitness;
}

void evaluate(Chromosome& c, const SLDescription& sld, const EvolutionConfig& config, std::uint64_t seed)
{
  auto ev = evaluate_ruleset(sld, c.ruleset, config, seed);
  c.feasible = ev.constraints.feasible;
  c.measures = ev.constraints.measures;
  c.feasibility = ev.feasibility;
  c.fitness = ev.fitness;
  c.evaluated = true;
}

} // namespace gvgrg
