#include "gvgrg/engine.hpp"

#include <json.hpp>

namespace gvgrg {

std::vector<std::vector<std::string>> grid_strings(const GameState& state)
{
  const auto& g = state.game();
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(g.height()),
                                             std::vector<std::string>(static_cast<std::size_t>(g.width())));
  for (const auto& sp : state.sprites()) {
    if (!sp.alive || sp.pos.x < 0 || sp.pos.y < 0 || sp.pos.x >= g.width() || sp.pos.y >= g.height()) continue;
    auto& cell = rows[static_cast<std::size_t>(sp.pos.y)][static_cast<std::size_t>(sp.pos.x)];
    if (!cell.empty()) cell += ',';
    cell += state.type_name(sp);
  }
  return rows;
}

std::string frame_record(const GameState& state)
{
  nlohmann::json j;
  j["frame"] = state.frame();
  j["score"] = state.score();
  j["status"] = std::string(to_string(state.status()));
  j["grid"] = grid_strings(state);
  return j.dump();
}

} // namespace gvgrg
