#include "gvgrg/vgdl.hpp"

#include <sstream>

namespace gvgrg {

namespace {

void append_params(std::string& out, const ParamMap& params)
{
  for (const auto& [k, v] : params) {
    out += ' ';
    out += k;
    out += '=';
    out += v;
  }
}

void write_rules(std::ostringstream& out, const Ruleset& r, const std::string& header_indent,
                 const std::string& entry_indent)
{
  out << header_indent << "InteractionSet\n";
  for (const auto& rule : r.interactions) out << entry_indent << serialize_rule(rule) << '\n';
  out << header_indent << "TerminationSet\n";
  for (const auto& rule : r.terminations) out << entry_indent << serialize_rule(rule) << '\n';
}

} // namespace

std::string serialize_rule(const InteractionRule& rule)
{
  std::string out = rule.first + ' ' + rule.second + " > " + std::string(to_string(rule.effect));
  append_params(out, rule.params);
  if (rule.score_change != 0) out += " scoreChange=" + std::to_string(rule.score_change);
  return out;
}

std::string serialize_rule(const TerminationRule& rule)
{
  std::string out(to_string(rule.kind));
  if (rule.kind == TerminationKind::SpriteCounter && !rule.sprites.empty()) {
    out += " stype=" + rule.sprites.front();
  } else {
    for (std::size_t i = 0; i < rule.sprites.size(); ++i)
      out += " stype" + std::to_string(i + 1) + "=" + rule.sprites[i];
  }
  out += " limit=" + std::to_string(rule.limit);
  out += rule.win ? " win=True" : " win=False";
  return out;
}

std::string serialize_ruleset(const Ruleset& ruleset)
{
  std::ostringstream out;
  write_rules(out, ruleset, "", "    ");
  return out.str();
}

std::string serialize_game(const GameDescription& game)
{
  std::ostringstream out;
  out << "BasicGame\n    SpriteSet\n";
  for (const auto& s : game.sprites) {
    std::string line = s.name + " > " + std::string(to_string(s.kind));
    append_params(line, s.params);
    out << "        " << line << '\n';
  }
  out << "    LevelMapping\n";
  for (const auto& [c, names] : game.mapping.entries) {
    out << "        " << c << " >";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
  }
  write_rules(out, game.ruleset, "    ", "        ");
  return out.str();
}

std::string serialize_level(const LevelGrid& level, const LevelMapping& mapping)
{
  std::string out;
  for (int y = 0; y < level.height; ++y) {
    for (int x = 0; x < level.width; ++x) {
      const auto& cell = level.at(x, y);
      if (cell.empty()) {
        out += ' ';
        continue;
      }
      char found = 0;
      for (const auto& [c, names] : mapping.entries) {
        if (names == cell) {
          found = c;
          break;
        }
      }
      if (!found) throw std::invalid_argument("no level mapping reproduces cell contents");
      out += found;
    }
    out += '\n';
  }
  return out;
}

} // namespace gvgrg
