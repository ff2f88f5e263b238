#include "gvgrg/arena.hpp"
#include "gvgrg/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gvgrg {

void RulesetPool::add(PoolEntry entry)
{
  const auto& f = fixture(entry.game);
  auto report = validate_ruleset(f.game, entry.ruleset, &f.level);
  if (!report.ok())
    throw std::invalid_argument("pool ruleset " + entry.name + " does not validate: " + report.errors.front());
  entry.game = f.name;
  by_game_[entry.game].push_back(std::move(entry));
}

RulesetPool RulesetPool::load(const std::filesystem::path& dir)
{
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::invalid_argument("pool directory not found: " + dir.string());
  RulesetPool pool;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    auto rel = fs::relative(file, dir);
    auto it = rel.begin();
    if (std::distance(rel.begin(), rel.end()) != 3) continue;
    PoolEntry e;
    e.game = (it++)->string();
    e.generator = (it++)->string();
    e.name = rel.generic_string();
    std::ifstream in(file);
    std::stringstream text;
    text << in.rdbuf();
    try {
      e.ruleset = parse_ruleset(text.str());
    } catch (const ParseError& err) {
      throw std::invalid_argument(file.string() + ": " + err.what());
    }
    pool.add(std::move(e));
  }
  return pool;
}

const std::vector<PoolEntry>& RulesetPool::entries(const std::string& game) const
{
  static const std::vector<PoolEntry> none;
  auto it = by_game_.find(game);
  return it == by_game_.end() ? none : it->second;
}

std::size_t RulesetPool::size() const
{
  std::size_t n = 0;
  for (const auto& [g, v] : by_game_) n += v.size();
  return n;
}

} // namespace gvgrg
