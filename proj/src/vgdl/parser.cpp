#include "gvgrg/vgdl.hpp"

#include "params.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gvgrg {

namespace {

struct Line {
  int number = 0;
  int indent = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    int indent = 0;
    while (static_cast<std::size_t>(indent) < raw.size() && raw[static_cast<std::size_t>(indent)] == ' ') ++indent;
    std::string_view body = raw.substr(static_cast<std::size_t>(indent));
    if (body.find('\t') != std::string_view::npos) throw ParseError(number, "tab characters are not allowed");
    if (body.empty() || body.front() == '#') continue;

    Line line{number, indent, {}};
    std::istringstream in{std::string(body)};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::pair<std::string, std::string> split_param(const Line& line, const std::string& token)
{
  auto eq = token.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
    throw ParseError(line.number, "expected <param>=<value>, got '" + token + "'");
  return {token.substr(0, eq), token.substr(eq + 1)};
}

// Position of the '>' token, which must be preceded by `lhs` tokens.
std::size_t arrow_index(const Line& line)
{
  auto it = std::find(line.tokens.begin(), line.tokens.end(), ">");
  if (it == line.tokens.end()) throw ParseError(line.number, "missing '>'");
  return static_cast<std::size_t>(it - line.tokens.begin());
}

void require_name(const Line& line, const std::string& name)
{
  if (!detail::is_identifier(name)) throw ParseError(line.number, "invalid sprite name '" + name + "'");
}

SpriteDef parse_sprite_line(const Line& line)
{
  std::size_t arrow = arrow_index(line);
  if (arrow != 1 || line.tokens.size() < 3) throw ParseError(line.number, "expected '<name> > <Kind> ...'");
  SpriteDef def;
  def.name = line.tokens[0];
  require_name(line, def.name);
  if (def.name == kEos) throw ParseError(line.number, "EOS is reserved");
  auto kind = parse_sprite_kind(line.tokens[2]);
  if (!kind) throw ParseError(line.number, "unknown sprite kind '" + line.tokens[2] + "'");
  def.kind = *kind;
  for (std::size_t i = 3; i < line.tokens.size(); ++i) {
    auto [key, value] = split_param(line, line.tokens[i]);
    if (auto err = detail::sprite_param_error(key, value)) throw ParseError(line.number, *err);
    if (!def.params.emplace(key, value).second) throw ParseError(line.number, "duplicate parameter '" + key + "'");
  }
  return def;
}

std::pair<char, std::vector<std::string>> parse_mapping_line(const Line& line)
{
  std::size_t arrow = arrow_index(line);
  if (arrow != 1 || line.tokens.size() < 3 || line.tokens[0].size() != 1)
    throw ParseError(line.number, "expected '<char> > <name> [<name> ...]'");
  std::vector<std::string> names(line.tokens.begin() + 2, line.tokens.end());
  for (const auto& n : names) require_name(line, n);
  return {line.tokens[0][0], std::move(names)};
}

// One line may list several second sprites ("a b c > effect"), giving one
// rule per pair.
std::vector<InteractionRule> parse_interaction_line(const Line& line)
{
  std::size_t arrow = arrow_index(line);
  if (arrow < 2 || arrow + 1 >= line.tokens.size())
    throw ParseError(line.number, "expected '<name> <name|EOS> > <effect> ...'");
  InteractionRule proto;
  proto.first = line.tokens[0];
  if (proto.first == kEos) throw ParseError(line.number, "EOS cannot be the first sprite of an interaction");
  require_name(line, proto.first);
  auto effect = parse_effect(line.tokens[arrow + 1]);
  if (!effect) throw ParseError(line.number, "unknown effect '" + line.tokens[arrow + 1] + "'");
  proto.effect = *effect;
  for (std::size_t i = arrow + 2; i < line.tokens.size(); ++i) {
    auto [key, value] = split_param(line, line.tokens[i]);
    if (key == "scoreChange") {
      auto v = detail::parse_int(value);
      if (!v) throw ParseError(line.number, "scoreChange must be an integer");
      proto.score_change = *v;
    } else if (!proto.params.emplace(key, value).second) {
      throw ParseError(line.number, "duplicate parameter '" + key + "'");
    }
  }
  std::vector<InteractionRule> rules;
  for (std::size_t i = 1; i < arrow; ++i) {
    InteractionRule r = proto;
    r.second = line.tokens[i];
    if (r.second != kEos) require_name(line, r.second);
    rules.push_back(std::move(r));
  }
  return rules;
}

TerminationRule parse_termination_line(const Line& line)
{
  auto kind = parse_termination_kind(line.tokens[0]);
  if (!kind) throw ParseError(line.number, "unknown termination kind '" + line.tokens[0] + "'");
  TerminationRule rule;
  rule.kind = *kind;
  std::map<int, std::string> numbered;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    auto [key, value] = split_param(line, line.tokens[i]);
    if (key == "limit") {
      auto v = detail::parse_int(value);
      if (!v || *v < 0) throw ParseError(line.number, "limit must be a non-negative integer");
      rule.limit = *v;
    } else if (key == "win") {
      auto v = detail::parse_bool(value);
      if (!v) throw ParseError(line.number, "win must be True or False");
      rule.win = *v;
    } else if (key == "stype") {
      require_name(line, value);
      if (!numbered.emplace(0, value).second) throw ParseError(line.number, "duplicate stype");
    } else if (key.rfind("stype", 0) == 0) {
      auto idx = detail::parse_int(std::string_view(key).substr(5));
      if (!idx || *idx < 1) throw ParseError(line.number, "unknown termination parameter '" + key + "'");
      require_name(line, value);
      if (!numbered.emplace(*idx, value).second) throw ParseError(line.number, "duplicate " + key);
    } else {
      throw ParseError(line.number, "unknown termination parameter '" + key + "'");
    }
  }
  if (numbered.count(0) && numbered.size() > 1) throw ParseError(line.number, "mixing stype and stypeN");
  int expect = numbered.count(0) ? 0 : 1;
  for (const auto& [idx, name] : numbered) {
    if (idx != expect++) throw ParseError(line.number, "stypeN parameters must be numbered 1..N");
    rule.sprites.push_back(name);
  }
  switch (rule.kind) {
  case TerminationKind::Timeout:
    if (!rule.sprites.empty()) throw ParseError(line.number, "Timeout takes no sprites");
    break;
  case TerminationKind::SpriteCounter:
    if (rule.sprites.size() != 1 || !numbered.count(0))
      throw ParseError(line.number, "SpriteCounter needs exactly one stype=<name>");
    break;
  case TerminationKind::MultiSpriteCounter:
    if (rule.sprites.size() < 2 || numbered.count(0))
      throw ParseError(line.number, "MultiSpriteCounter needs stype1=.. stype2=..");
    break;
  }
  return rule;
}

enum class Section { None, SpriteSet, LevelMapping, InteractionSet, TerminationSet };

Section section_of(const Line& line)
{
  if (line.tokens.size() != 1) return Section::None;
  const auto& t = line.tokens[0];
  if (t == "SpriteSet") return Section::SpriteSet;
  if (t == "LevelMapping") return Section::LevelMapping;
  if (t == "InteractionSet") return Section::InteractionSet;
  if (t == "TerminationSet") return Section::TerminationSet;
  return Section::None;
}

struct RawGame {
  GameDescription game;
  std::vector<int> sprite_lines;
  std::vector<int> interaction_lines;
  std::vector<int> termination_lines;
  std::map<char, int> mapping_lines;
};

// Parses a run of sections whose headers sit at `section_indent`.
void parse_sections(const std::vector<Line>& lines, std::size_t begin, int section_indent, bool ruleset_only,
                    RawGame& out)
{
  std::set<Section> seen;
  Section current = Section::None;
  int entry_indent = -1;
  for (std::size_t i = begin; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.indent == section_indent) {
      current = section_of(line);
      if (current == Section::None) throw ParseError(line.number, "unknown section '" + line.tokens[0] + "'");
      if (ruleset_only && (current == Section::SpriteSet || current == Section::LevelMapping))
        throw ParseError(line.number, "ruleset files only hold InteractionSet and TerminationSet");
      if (!seen.insert(current).second) throw ParseError(line.number, "duplicate section '" + line.tokens[0] + "'");
      entry_indent = -1;
      continue;
    }
    if (line.indent < section_indent) throw ParseError(line.number, "unexpected dedent");
    if (current == Section::None) throw ParseError(line.number, "entry outside of a section");
    if (entry_indent < 0) entry_indent = line.indent;
    if (line.indent != entry_indent) throw ParseError(line.number, "inconsistent indentation");

    switch (current) {
    case Section::SpriteSet:
      out.game.sprites.push_back(parse_sprite_line(line));
      out.sprite_lines.push_back(line.number);
      break;
    case Section::LevelMapping: {
      auto [c, names] = parse_mapping_line(line);
      if (c == ' ') throw ParseError(line.number, "space is reserved for empty cells");
      if (!out.game.mapping.entries.emplace(c, std::move(names)).second)
        throw ParseError(line.number, std::string("duplicate mapping for '") + c + "'");
      out.mapping_lines[c] = line.number;
      break;
    }
    case Section::InteractionSet:
      for (auto& r : parse_interaction_line(line)) {
        out.game.ruleset.interactions.push_back(std::move(r));
        out.interaction_lines.push_back(line.number);
      }
      break;
    case Section::TerminationSet:
      out.game.ruleset.terminations.push_back(parse_termination_line(line));
      out.termination_lines.push_back(line.number);
      break;
    case Section::None:
      break;
    }
  }
}

void check_game(const RawGame& raw)
{
  const GameDescription& g = raw.game;
  std::set<std::string> names;
  int avatars = 0;
  int resources = 0;
  for (std::size_t i = 0; i < g.sprites.size(); ++i) {
    const auto& s = g.sprites[i];
    if (!names.insert(s.name).second) throw ParseError(raw.sprite_lines[i], "duplicate sprite name '" + s.name + "'");
    if (is_avatar(s.kind)) ++avatars;
    if (s.kind == SpriteKind::Resource) ++resources;
  }
  for (std::size_t i = 0; i < g.sprites.size(); ++i) {
    const auto& s = g.sprites[i];
    auto stype = s.param("stype");
    bool needs_stype = is_spawner(s.kind) || s.kind == SpriteKind::Portal || s.kind == SpriteKind::Chaser ||
                       s.kind == SpriteKind::Fleeing;
    if (needs_stype && !stype)
      throw ParseError(raw.sprite_lines[i], std::string(to_string(s.kind)) + " '" + s.name + "' requires stype");
    if (stype && !names.count(*stype))
      throw ParseError(raw.sprite_lines[i], "dangling stype reference '" + *stype + "'");
  }
  int first_line = raw.sprite_lines.empty() ? 1 : raw.sprite_lines.front();
  if (avatars != 1)
    throw ParseError(first_line, "expected exactly one avatar sprite, found " + std::to_string(avatars));
  if (resources > 4) throw ParseError(first_line, "at most 4 Resource sprites are supported");
  for (const auto& [c, list] : g.mapping.entries)
    for (const auto& n : list)
      if (!names.count(n)) throw ParseError(raw.mapping_lines.at(c), "mapping references unknown sprite '" + n + "'");

  for (std::size_t i = 0; i < g.ruleset.interactions.size(); ++i)
    if (auto err = interaction_error(g, g.ruleset.interactions[i])) throw ParseError(raw.interaction_lines[i], *err);
  for (std::size_t i = 0; i < g.ruleset.terminations.size(); ++i)
    if (auto err = termination_error(g, g.ruleset.terminations[i])) throw ParseError(raw.termination_lines[i], *err);
}

} // namespace

GameDescription parse_game(std::string_view text)
{
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty game description");
  const Line& head = lines.front();
  if (head.tokens.size() != 1 || head.tokens[0] != "BasicGame") throw ParseError(head.number, "expected 'BasicGame'");
  RawGame raw;
  int section_indent = lines.size() > 1 ? lines[1].indent : head.indent + 4;
  if (section_indent <= head.indent) throw ParseError(lines[1].number, "sections must be indented under BasicGame");
  parse_sections(lines, 1, section_indent, false, raw);
  check_game(raw);
  return std::move(raw.game);
}

Ruleset parse_ruleset(std::string_view text)
{
  auto lines = tokenize(text);
  RawGame raw;
  if (!lines.empty()) parse_sections(lines, 0, lines.front().indent, true, raw);
  return std::move(raw.game.ruleset);
}

LevelGrid parse_level(std::string_view text, const LevelMapping& mapping)
{
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    pos = end + 1;
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty() || rows.front().empty()) throw ParseError(1, "level is empty");

  LevelGrid grid;
  grid.width = static_cast<int>(rows.front().size());
  grid.height = static_cast<int>(rows.size());
  grid.cells.reserve(static_cast<std::size_t>(grid.width * grid.height));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    int line = static_cast<int>(y) + 1;
    if (static_cast<int>(rows[y].size()) != grid.width)
      throw ParseError(line, "ragged row: length " + std::to_string(rows[y].size()) + ", expected " +
                                 std::to_string(grid.width));
    for (char c : rows[y]) {
      if (c == ' ') {
        grid.cells.emplace_back();
        continue;
      }
      auto it = mapping.entries.find(c);
      if (it == mapping.entries.end()) throw ParseError(line, std::string("unmapped level character '") + c + "'");
      grid.cells.push_back(it->second);
    }
  }
  return grid;
}

} // namespace gvgrg
