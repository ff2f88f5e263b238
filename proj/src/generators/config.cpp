#include "gvgrg/generators.hpp"

#include "../vgdl/params.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gvgrg {

void EvolutionConfig::check() const
{
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (population_size < 2) fail("population_size must be >= 2");
  for (double f : {init_random_frac, init_constructive_frac, init_mutated_frac})
    if (f < 0.0 || f > 1.0) fail("initial fractions must lie in [0,1]");
  if (std::abs(init_random_frac + init_constructive_frac + init_mutated_frac - 1.0) > 1e-9)
    fail("initial fractions must sum to 1");
  for (double p : {crossover_prob, mutation_prob, bad_frame_threshold})
    if (p < 0.0 || p > 1.0) fail("probabilities must lie in [0,1]");
  if (max_mutations < 1) fail("max_mutations must be >= 1");
  if (elitism != 1) fail("elitism must be 1");
  if (do_nothing_frames < 1 || playthroughs < 1 || min_game_frames < 1 || max_frames < 1)
    fail("frame counts and playthroughs must be positive");
  if (time_budget_s <= 0.0) fail("time_budget_s must be positive");
  if (max_generations < 0) fail("max_generations must be >= 0");
  check_budget(smart_budget);
  check_budget(baseline_budget);
}

EvolutionConfig parse_config(std::string_view text)
{
  EvolutionConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key=value");
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(' ');
      auto b = s.find_last_not_of(' ');
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto as_int = [&] {
      auto v = detail::parse_int(value);
      if (!v) throw ParseError(number, key + " needs an integer");
      return *v;
    };
    auto as_double = [&] {
      auto v = detail::parse_double(value);
      if (!v) throw ParseError(number, key + " needs a number");
      return *v;
    };
    if (key == "population_size") c.population_size = as_int();
    else if (key == "init_random_frac") c.init_random_frac = as_double();
    else if (key == "init_constructive_frac") c.init_constructive_frac = as_double();
    else if (key == "init_mutated_frac") c.init_mutated_frac = as_double();
    else if (key == "crossover_prob") c.crossover_prob = as_double();
    else if (key == "mutation_prob") c.mutation_prob = as_double();
    else if (key == "max_mutations") c.max_mutations = as_int();
    else if (key == "elitism") c.elitism = as_int();
    else if (key == "bad_frame_threshold") c.bad_frame_threshold = as_double();
    else if (key == "do_nothing_frames") c.do_nothing_frames = as_int();
    else if (key == "playthroughs") c.playthroughs = as_int();
    else if (key == "min_game_frames") c.min_game_frames = as_int();
    else if (key == "time_budget_s") c.time_budget_s = as_double();
    else if (key == "seed") {
      auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), c.seed);
      if (ec != std::errc() || end != value.data() + value.size()) throw ParseError(number, "seed needs an unsigned integer");
    }
    else if (key == "smart_iterations") c.smart_budget.iterations = as_int();
    else if (key == "smart_depth") c.smart_budget.rollout_depth = as_int();
    else if (key == "baseline_iterations") c.baseline_budget.iterations = as_int();
    else if (key == "baseline_depth") c.baseline_budget.rollout_depth = as_int();
    else if (key == "exploration") c.smart_budget.exploration = c.baseline_budget.exploration = as_double();
    else if (key == "max_frames") c.max_frames = as_int();
    else if (key == "max_generations") c.max_generations = as_int();
    else throw ParseError(number, "unknown key '" + key + "'");
  }
  c.check();
  return c;
}

std::string serialize_config(const EvolutionConfig& c)
{
  std::ostringstream out;
  out.precision(17);
  out << "population_size=" << c.population_size << '\n'
      << "init_random_frac=" << c.init_random_frac << '\n'
      << "init_constructive_frac=" << c.init_constructive_frac << '\n'
      << "init_mutated_frac=" << c.init_mutated_frac << '\n'
      << "crossover_prob=" << c.crossover_prob << '\n'
      << "mutation_prob=" << c.mutation_prob << '\n'
      << "max_mutations=" << c.max_mutations << '\n'
      << "elitism=" << c.elitism << '\n'
      << "bad_frame_threshold=" << c.bad_frame_threshold << '\n'
      << "do_nothing_frames=" << c.do_nothing_frames << '\n'
      << "playthroughs=" << c.playthroughs << '\n'
      << "min_game_frames=" << c.min_game_frames << '\n'
      << "time_budget_s=" << c.time_budget_s << '\n'
      << "seed=" << c.seed << '\n'
      << "smart_iterations=" << c.smart_budget.iterations << '\n'
      << "smart_depth=" << c.smart_budget.rollout_depth << '\n'
      << "baseline_iterations=" << c.baseline_budget.iterations << '\n'
      << "baseline_depth=" << c.baseline_budget.rollout_depth << '\n'
      << "exploration=" << c.smart_budget.exploration << '\n'
      << "max_frames=" << c.max_frames << '\n'
      << "max_generations=" << c.max_generations << '\n';
  return out.str();
}

} // namespace gvgrg
