#include "gvgrg/arena.hpp"

#include <json.hpp>

#include <sstream>

namespace gvgrg {

namespace {

int precedence(const std::string& g)
{
  if (g == "search") return 0;
  if (g == "constructive") return 1;
  if (g == "random") return 2;
  return 3;
}

} // namespace

std::string generator_label(const std::string& generator)
{
  if (generator == "search") return "Search";
  if (generator == "constructive") return "Const";
  if (generator == "random") return "Rnd";
  return generator;
}

const TallyCell& TallyTable::at(const std::string& row, const std::string& game) const
{
  static const TallyCell empty;
  auto r = cells.find(row);
  if (r == cells.end()) return empty;
  auto c = r->second.find(game);
  return c == r->second.end() ? empty : c->second;
}

std::string TallyTable::text() const
{
  std::ostringstream out;
  out << "pair";
  for (const auto& g : games) out << '\t' << g;
  out << '\n';
  for (const auto& r : rows) {
    out << r;
    for (const auto& g : games) out << '\t' << at(r, g).text();
    out << '\n';
  }
  return out.str();
}

std::string TallyTable::json() const
{
  nlohmann::json j;
  j["games"] = games;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"pair", r}, {"cells", nlohmann::json::array()}};
    for (const auto& g : games) {
      const auto& c = at(r, g);
      row["cells"].push_back({{"game", g}, {"wins", c.wins}, {"total", c.total}, {"text", c.text()}});
    }
    j["rows"].push_back(row);
  }
  return j.dump();
}

TallyTable tally_preferences(const std::vector<VoteRecord>& records, const std::vector<std::string>& games)
{
  TallyTable t;
  t.games = games;
  t.rows = {"Search vs Rnd", "Search vs Const", "Const vs Rnd"};
  for (const auto& v : records) {
    if (v.choice != VoteChoice::First && v.choice != VoteChoice::Second) continue;
    if (v.generator_a == v.generator_b) continue;
    const std::string& lead = precedence(v.generator_a) <= precedence(v.generator_b) ? v.generator_a : v.generator_b;
    const std::string& other = &lead == &v.generator_a ? v.generator_b : v.generator_a;
    std::string row = generator_label(lead) + " vs " + generator_label(other);
    if (std::find(t.rows.begin(), t.rows.end(), row) == t.rows.end()) t.rows.push_back(row);
    if (std::find(t.games.begin(), t.games.end(), v.game) == t.games.end()) t.games.push_back(v.game);
    auto& cell = t.cells[row][v.game];
    ++cell.total;
    const std::string& winner = v.choice == VoteChoice::First ? v.generator_a : v.generator_b;
    if (winner == lead) ++cell.wins;
  }
  return t;
}

} // namespace gvgrg
