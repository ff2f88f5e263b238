#include "gvgrg/arena.hpp"
#include "gvgrg/fixtures.hpp"

#include <json.hpp>

#include <cstdio>

namespace gvgrg {

struct SessionManager::Session {
  std::string id;
  std::string game;
  std::array<PoolEntry, 2> entries;
  std::array<std::shared_ptr<const CompiledGame>, 2> compiled;
  std::array<std::optional<GameState>, 2> states;
  std::array<int, 2> plays{0, 0};
  std::uint64_t seed = 0;
  std::mutex mu;
};

namespace {

int checked_index(int game_index)
{
  if (game_index != 0 && game_index != 1) throw ArenaError(400, "gameIndex must be 0 or 1");
  return game_index;
}

} // namespace

SessionManager::SessionManager(RulesetPool pool, std::uint64_t seed)
    : pool_(std::move(pool)), rng_(derive_seed(seed, 0x5e55)), seed_(seed)
{
}

std::string SessionManager::create(const std::string& game)
{
  const Fixture* f = nullptr;
  try {
    f = &fixture(game);
  } catch (const std::exception&) {
    throw ArenaError(404, "unknown game " + game);
  }
  const auto& entries = pool_.entries(f->name);
  if (entries.size() < 2) throw ArenaError(409, "pool has fewer than two rulesets for " + f->name);

  auto s = std::make_shared<Session>();
  std::lock_guard lock(mu_);
  std::size_t a = uniform_index(rng_, entries.size());
  std::size_t b = uniform_index(rng_, entries.size() - 1);
  if (b >= a) ++b;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
  s->id = buf;
  s->game = f->name;
  s->entries = {entries[a], entries[b]};
  for (int i = 0; i < 2; ++i)
    s->compiled[static_cast<std::size_t>(i)] =
        CompiledGame::compile(f->game.with_ruleset(s->entries[static_cast<std::size_t>(i)].ruleset), f->level);
  s->seed = derive_seed(seed_, ++counter_);
  sessions_[s->id] = s;
  return s->id;
}

std::shared_ptr<SessionManager::Session> SessionManager::get(const std::string& id) const
{
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ArenaError(404, "unknown session " + id);
  return it->second;
}

std::string SessionManager::describe(const std::string& id) const
{
  auto s = get(id);
  std::lock_guard lock(s->mu);
  nlohmann::json games = nlohmann::json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    nlohmann::json g = {{"index", i}, {"plays", s->plays[i]}};
    if (const auto& st = s->states[i]) {
      g["status"] = std::string(to_string(st->status()));
      g["frame"] = st->frame();
      g["score"] = st->score();
    } else {
      g["status"] = "idle";
    }
    games.push_back(g);
  }
  return nlohmann::json{{"sessionId", s->id}, {"game", s->game}, {"games", games}}.dump();
}

std::string SessionManager::restart(const std::string& id, int game_index)
{
  auto i = static_cast<std::size_t>(checked_index(game_index));
  auto s = get(id);
  std::lock_guard lock(s->mu);
  s->states[i] = init_state(s->compiled[i], derive_seed(s->seed, i, static_cast<std::uint64_t>(s->plays[i])));
  ++s->plays[i];
  return frame_record(*s->states[i]);
}

std::string SessionManager::advance(const std::string& id, int game_index, const std::string& action)
{
  auto i = static_cast<std::size_t>(checked_index(game_index));
  auto a = parse_action(action);
  if (!a) throw ArenaError(400, "unknown action " + action);
  auto s = get(id);
  std::lock_guard lock(s->mu);
  if (!s->states[i]) {
    s->states[i] = init_state(s->compiled[i], derive_seed(s->seed, i, 0));
    s->plays[i] = 1;
  }
  auto& st = *s->states[i];
  if (!st.running()) throw ArenaError(409, "game is over; restart it to play again");
  try {
    gvgrg::advance(st, *a);
  } catch (const EngineFault&) {
    st.force_status(GameStatus::Lose);
  } catch (const std::invalid_argument& e) {
    throw ArenaError(400, e.what());
  }
  return frame_record(st);
}

std::pair<std::string, std::string> SessionManager::vote_target(const std::string& id, std::string* game) const
{
  auto s = get(id);
  std::lock_guard lock(s->mu);
  if (s->plays[0] == 0 || s->plays[1] == 0) throw ArenaError(409, "both games must be played before voting");
  if (game) *game = s->game;
  return {s->entries[0].generator, s->entries[1].generator};
}

std::size_t SessionManager::session_count() const
{
  std::lock_guard lock(mu_);
  return sessions_.size();
}

} // namespace gvgrg
