#include "gvgrg/fixtures.hpp"
#include "gvgrg/similarity.hpp"
#include "gvgrg/vgdl.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gvgrg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const fs::path& scratch()
{
  static fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("gvgrg_cli_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Run cli(const std::string& args)
{
  auto out = scratch() / "stdout";
  auto err = scratch() / "stderr";
  std::string cmd = std::string(GVGRG_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

} // namespace

TEST_CASE("generate writes a valid ruleset, reproducibly")
{
  auto a = scratch() / "a.txt";
  auto b = scratch() / "b.txt";
  REQUIRE(cli("generate --game aliens --generator constructive --seed 7 --out " + a.string()).code == 0);
  REQUIRE(cli("generate --game aliens --generator constructive --seed 7 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto& f = fixture("aliens");
  auto r = parse_ruleset(slurp(a));
  CHECK(validate_ruleset(f.game, r, &f.level).ok());

  auto rnd = cli("generate --game solarfox --generator random --seed 3");
  CHECK(rnd.code == 0);
  CHECK(validate_ruleset(fixture("solarfox").game, parse_ruleset(rnd.out)).ok());
}

TEST_CASE("generate from game and level files")
{
  const auto& f = fixture("boulderdash");
  auto game = scratch() / "game.txt";
  auto level = scratch() / "level.txt";
  std::ofstream(game) << f.game_text;
  std::ofstream(level) << f.level_text;
  auto res = cli("generate --game " + game.string() + " --level " + level.string() + " --generator random --seed 2");
  CHECK(res.code == 0);
  CHECK(validate_ruleset(f.game, parse_ruleset(res.out), &f.level).ok());
  CHECK(cli("generate --game " + game.string() + " --generator random").code != 0);
}

TEST_CASE("generate failures")
{
  CHECK(cli("generate --game aliens --generator genetic").code != 0);
  CHECK(cli("generate --game atlantis --generator random").code != 0);
  auto broken = scratch() / "broken.txt";
  std::ofstream(broken) << "BasicGame\n    SpriteSet\n        avatar > Hovercraft\n";
  auto res = cli("generate --game " + broken.string() + " --level " + broken.string());
  CHECK(res.code != 0);
  CHECK(res.err.find("line 3") != std::string::npos);
}

TEST_CASE("search over budget writes nothing")
{
  auto out = scratch() / "search.txt";
  fs::remove(out);
  auto res = cli("generate --game aliens --generator search --budget 10ms --seed 1 --out " + out.string());
  CHECK(res.code != 0);
  CHECK(res.err.find("budget") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("search with a small config")
{
  auto cfg = scratch() / "search.cfg";
  std::ofstream(cfg) << "population_size=6\nplaythroughs=1\nsmart_iterations=4\nbaseline_iterations=4\nmax_frames=150\n";
  auto a = scratch() / "s1.txt";
  auto b = scratch() / "s2.txt";
  std::string args = "generate --game aliens --generator search --budget 120s --generations 2 --seed 4 --config " + cfg.string();
  REQUIRE(cli(args + " --out " + a.string()).code == 0);
  REQUIRE(cli(args + " --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(validate_ruleset(fixture("aliens").game, parse_ruleset(slurp(a))).ok());
}

TEST_CASE("simulate reports")
{
  auto rules = scratch() / "c.txt";
  REQUIRE(cli("generate --game aliens --generator constructive --seed 7 --out " + rules.string()).code == 0);
  auto res = cli("simulate --game aliens --ruleset " + rules.string() + " --agent donothing --plays 1 --max-steps 40");
  CHECK(res.code == 0);
  CHECK(res.out.find("steps=40") != std::string::npos);
  CHECK(res.out.find("plays=1") != std::string::npos);

  auto none = cli("simulate --game aliens --agent random --plays 0");
  CHECK(none.code == 0);
  CHECK(none.out == "plays=0\n");

  auto trace = scratch() / "trace.ndjson";
  auto traced = cli("simulate --game solarfox --agent random --plays 1 --max-steps 25 --trace " + trace.string());
  CHECK(traced.code == 0);
  std::ifstream lines(trace);
  int n = 0;
  for (std::string line; std::getline(lines, line);) ++n;
  CHECK(n >= 25);

  auto invalid = scratch() / "invalid.txt";
  std::ofstream(invalid) << "InteractionSet\n    avatar alien > killSprite\n";
  CHECK(cli("simulate --game aliens --ruleset " + invalid.string()).code != 0);
  CHECK(cli("simulate --game aliens --agent chess").code != 0);
}

TEST_CASE("similarity profiles")
{
  auto same = scratch() / "same";
  fs::create_directories(same);
  std::ofstream(same / "a.txt") << serialize_ruleset(fixture("aliens").game.ruleset);
  std::ofstream(same / "b.txt") << serialize_ruleset(fixture("aliens").game.ruleset);
  auto csv = scratch() / "out.csv";
  REQUIRE(cli("similarity " + same.string() + " --game aliens --out " + csv.string()).code == 0);
  CHECK(slurp(csv) == "generator,game,minDistance\nsame,a.txt,0\nsame,b.txt,0\n");

  auto lonely = scratch() / "lonely";
  fs::create_directories(lonely);
  std::ofstream(lonely / "a.txt") << serialize_ruleset(fixture("aliens").game.ruleset);
  CHECK(cli("similarity " + lonely.string()).code != 0);

  std::ofstream(same / "c.txt") << "InteractionSet\n    avatar > killSprite\n";
  auto res = cli("similarity " + same.string());
  CHECK(res.code != 0);
  CHECK(res.err.find("c.txt") != std::string::npos);
}

TEST_CASE("unknown subcommand")
{
  CHECK(cli("fly").code != 0);
  CHECK(cli("").code != 0);
}
