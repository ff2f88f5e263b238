#include "gvgrg/agents.hpp"
#include "gvgrg/arena.hpp"
#include "gvgrg/engine.hpp"
#include "gvgrg/fixtures.hpp"
#include "gvgrg/generators.hpp"
#include "gvgrg/similarity.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace gvgrg;

namespace {

struct Failure : std::runtime_error {
  Failure(int code, const std::string& message) : std::runtime_error(message), code(code) {}
  int code;
};

std::string read_file(const fs::path& p)
{
  std::ifstream in(p);
  if (!in) throw Failure(2, "cannot read " + p.string());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw Failure(2, "cannot write " + path);
}

/// "90", "90s", "1500ms", "5m", "2h" as seconds.
double parse_budget(const std::string& text)
{
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Failure(2, "bad budget '" + text + "'");
  }
  std::string unit = text.substr(used);
  double scale = unit.empty() || unit == "s" ? 1 : unit == "ms" ? 0.001 : unit == "m" ? 60 : unit == "h" ? 3600 : -1;
  if (scale < 0 || v <= 0) throw Failure(2, "bad budget '" + text + "'");
  return v * scale;
}

template <typename F>
auto parsing(const std::string& what, F&& f)
{
  try {
    return f();
  } catch (const ParseError& e) {
    throw Failure(2, what + ": " + e.what());
  }
}

struct World {
  GameDescription game;
  LevelGrid level;
};

/// Fixture name, or a game file (then --level is required).
World load_world(const std::string& game, const std::string& level)
{
  GameDescription g;
  LevelGrid l;
  if (fs::is_regular_file(game)) {
    g = parsing(game, [&] { return parse_game(read_file(game)); });
    if (level.empty()) throw Failure(2, "--level is required with a game file");
  } else {
    try {
      const auto& f = fixture(game);
      g = f.game;
      l = f.level;
    } catch (const std::invalid_argument& e) {
      throw Failure(2, e.what());
    }
  }
  if (!level.empty()) l = parsing(level, [&] { return parse_level(read_file(level), g.mapping); });
  return {std::move(g), std::move(l)};
}

SLDescription load_description(const std::string& game, const std::string& level)
{
  auto w = load_world(game, level);
  try {
    return SLDescription(std::move(w.game), std::move(w.level));
  } catch (const std::exception& e) {
    throw Failure(2, e.what());
  }
}

struct Options {
  std::string game = "aliens";
  std::string level;
  std::string ruleset;
  std::string generator = "constructive";
  std::string agent = "olets";
  std::uint64_t seed = 1;
  std::string budget = "300s";
  int plays = 1;
  std::string out;
  std::string config;
  std::string trace;
  int generations = 0;
  int max_steps = 1000;
  int iterations = 100;
  int depth = 10;
  std::vector<std::string> dirs;
  int port = 8080;
  int ws_port = 0;
  std::string pool;
  std::string votes = "votes.ndjson";
};

int run_generate(const Options& o)
{
  auto start = Clock::now();
  double budget = parse_budget(o.budget);
  auto sld = load_description(o.game, o.level);
  Rng rng(o.seed);
  Ruleset r;
  if (o.generator == "random") {
    r = generate_random(sld, rng);
  } else if (o.generator == "constructive") {
    r = generate_constructive(sld, rng);
  } else if (o.generator == "search") {
    EvolutionConfig config;
    if (!o.config.empty()) config = parsing(o.config, [&] { return parse_config(read_file(o.config)); });
    config.seed = o.seed;
    config.time_budget_s = 0.9 * budget;
    if (o.generations > 0) config.max_generations = o.generations;
    auto result = generate_search(sld, config, [](const Population& p) {
      const auto* e = elite(p);
      std::cerr << "generation " << p.generation << " feasible " << p.feasible.size() << " elite "
                << (e ? e->fitness : 0.0) << '\n';
    });
    r = result.ruleset;
  } else {
    throw Failure(2, "unknown generator '" + o.generator + "'");
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (elapsed > budget) throw Failure(3, "budget exceeded: " + std::to_string(elapsed) + " s");
  auto report = validate_ruleset(sld.game(), r, &sld.level());
  if (!report.ok()) throw Failure(1, "generated ruleset does not validate: " + report.errors.front());
  write_output(o.out, serialize_ruleset(r));
  return 0;
}

int run_simulate(const Options& o)
{
  auto w = load_world(o.game, o.level);
  Ruleset r = w.game.ruleset;
  if (!o.ruleset.empty()) r = parsing(o.ruleset, [&] { return parse_ruleset(read_file(o.ruleset)); });
  auto game = w.game.with_ruleset(r);
  auto report = validate_ruleset(game, r, &w.level);
  if (!report.ok()) {
    for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
    return 1;
  }
  AgentBudget budget{o.iterations, o.depth, 1.41, 0.0};
  std::unique_ptr<Agent> agent;
  try {
    agent = make_agent(o.agent, budget);
  } catch (const std::invalid_argument& e) {
    throw Failure(2, e.what());
  }
  std::ofstream trace;
  if (!o.trace.empty()) trace.open(o.trace);
  auto compiled = CompiledGame::compile(game, w.level);

  std::ostringstream out;
  int wins = 0;
  double score = 0, steps = 0;
  for (int p = 0; p < o.plays; ++p) {
    FrameSink sink;
    if (trace.is_open()) sink = [&](const GameState& s) { trace << frame_record(s) << '\n'; };
    auto res = simulate(compiled, *agent, o.max_steps, derive_seed(o.seed, static_cast<std::uint64_t>(p)), sink);
    out << "play " << p << " status=" << to_string(res.status) << " score=" << res.score << " steps=" << res.steps
        << " bad_frames=" << res.bad_frames << " errors=" << res.errors << '\n';
    wins += res.status == GameStatus::Win;
    score += res.score;
    steps += res.steps;
  }
  out << "plays=" << o.plays;
  if (o.plays > 0)
    out << " win_rate=" << static_cast<double>(wins) / o.plays << " avg_score=" << score / o.plays
        << " avg_steps=" << steps / o.plays;
  out << '\n';
  write_output(o.out, out.str());
  return 0;
}

int run_similarity(const Options& o)
{
  std::vector<DistanceProfile> profiles;
  for (const auto& dir : o.dirs) {
    if (!fs::is_directory(dir)) throw Failure(2, dir + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Ruleset> rulesets;
    for (const auto& f : files)
      rulesets.push_back(parsing(f.string(), [&] { return parse_ruleset(read_file(f)); }));
    if (rulesets.size() < 2) throw Failure(2, dir + " holds fewer than two rulesets");
    auto profile = min_distance_profile(rulesets);
    profile.generator = fs::path(dir).lexically_normal().filename().string();
    if (profile.generator.empty()) profile.generator = fs::path(dir).lexically_normal().parent_path().filename().string();
    profile.game = o.game;
    profile.names.clear();
    for (const auto& f : files) profile.names.push_back(f.filename().string());
    profiles.push_back(std::move(profile));
  }
  write_output(o.out, profile_csv(profiles));
  return 0;
}

volatile std::sig_atomic_t g_stop = 0;

int run_serve(const Options& o)
{
  if (o.pool.empty()) throw Failure(2, "--pool is required");
  ArenaConfig config;
  config.port = o.port;
  config.ws_port = o.ws_port;
  config.pool_dir = o.pool;
  config.votes_file = o.votes;
  config.seed = o.seed;
  RulesetPool pool;
  try {
    pool = RulesetPool::load(o.pool);
  } catch (const std::invalid_argument& e) {
    throw Failure(2, e.what());
  }
  ArenaServer server(config, std::move(pool));
  server.start();
  std::cerr << "serving http on " << server.port() << ", websocket on " << server.ws_port() << '\n';
  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
  server.stop();
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Game rule generation, simulation and judging"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--out", o.out, "Output file (stdout when omitted)");
  };
  auto world = [&](CLI::App* c) {
    c->add_option("--game", o.game, "Fixture name or game description file");
    c->add_option("--level", o.level, "Level file");
  };

  auto* gen = app.add_subcommand("generate", "Generate a ruleset");
  common(gen);
  world(gen);
  gen->add_option("--generator", o.generator, "random, constructive or search");
  gen->add_option("--budget", o.budget, "Wall-clock budget (e.g. 60s, 5m)");
  gen->add_option("--config", o.config, "Search configuration file");
  gen->add_option("--generations", o.generations, "Stop the search after this many generations");

  auto* sim = app.add_subcommand("simulate", "Play a game with an agent");
  common(sim);
  world(sim);
  sim->add_option("--ruleset", o.ruleset, "Ruleset file (the game's own when omitted)");
  sim->add_option("--agent", o.agent, "donothing, random, mcts or olets");
  sim->add_option("--plays", o.plays, "Number of plays")->check(CLI::NonNegativeNumber);
  sim->add_option("--max-steps", o.max_steps, "Frame cap per play")->check(CLI::PositiveNumber);
  sim->add_option("--iterations", o.iterations, "Search iterations per move")->check(CLI::PositiveNumber);
  sim->add_option("--depth", o.depth, "Rollout depth")->check(CLI::PositiveNumber);
  sim->add_option("--trace", o.trace, "Write one frame record per line");

  auto* simi = app.add_subcommand("similarity", "Nearest-neighbour distance profile of ruleset directories");
  common(simi);
  simi->add_option("--game", o.game, "Game label for the CSV");
  simi->add_option("dirs", o.dirs, "Directories of ruleset files (one profile each)")->required();

  auto* serve = app.add_subcommand("serve", "Run the judging service");
  common(serve);
  serve->add_option("--port", o.port, "HTTP port");
  serve->add_option("--ws-port", o.ws_port, "WebSocket port (HTTP port + 1 when omitted)");
  serve->add_option("--pool", o.pool, "Pool directory POOL/<game>/<generator>/*.txt");
  serve->add_option("--votes", o.votes, "Vote log file");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return run_generate(o);
    if (*sim) return run_simulate(o);
    if (*simi) return run_similarity(o);
    if (*serve) return run_serve(o);
  } catch (const Failure& f) {
    std::cerr << "gvgrg: " << f.what() << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "gvgrg: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
