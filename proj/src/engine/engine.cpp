#include "gvgrg/engine.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <tuple>

namespace gvgrg {

namespace {

constexpr int kCullDistance = 10;
constexpr std::size_t kMaxSprites = 4000;
constexpr Direction kMoveOrder[] = {Direction::Up, Direction::Down, Direction::Left, Direction::Right};

Position moved(Position p, Direction d)
{
  switch (d) {
  case Direction::Up:
    --p.y;
    break;
  case Direction::Down:
    ++p.y;
    break;
  case Direction::Left:
    --p.x;
    break;
  case Direction::Right:
    ++p.x;
    break;
  case Direction::None:
    break;
  }
  return p;
}

Direction opposite(Direction d)
{
  switch (d) {
  case Direction::Up:
    return Direction::Down;
  case Direction::Down:
    return Direction::Up;
  case Direction::Left:
    return Direction::Right;
  case Direction::Right:
    return Direction::Left;
  case Direction::None:
    break;
  }
  return Direction::None;
}

Direction direction_of(Action a)
{
  switch (a) {
  case Action::Up:
    return Direction::Up;
  case Action::Down:
    return Direction::Down;
  case Action::Left:
    return Direction::Left;
  case Action::Right:
    return Direction::Right;
  default:
    return Direction::None;
  }
}

// Per-thread collision index, built once per frame after movement and kept
// in sync while effects run. Never part of a GameState so copies stay cheap.
struct CollisionIndex {
  struct Pair {
    int cell;
    int a;
    int b;
    bool operator<(const Pair& o) const { return std::tie(cell, a, b) < std::tie(o.cell, o.a, o.b); }
  };
  std::vector<int> head; // one bucket per cell plus a final bucket for off-grid sprites
  std::vector<int> next;
  std::vector<int> prev;
  std::vector<int> bucket;
  std::vector<std::vector<int>> by_type;
  std::vector<Pair> pairs;
  bool live = false;
};

thread_local CollisionIndex t_index;

} // namespace

// Friend of GameState that owns the per-frame update.
class Stepper {
 public:
  Stepper(GameState& s) : s_(s), g_(*s.game_) {}

  void run(Action action)
  {
    for (auto& sp : s_.sprites_) sp.prev = sp.pos;
    t_index.live = false;
    act_avatar(action);
    act_npcs();
    resolve_collisions();
    cull_and_compact();
    ++s_.frame_;
    for (const auto& sp : s_.sprites_) {
      if (g_.types()[static_cast<std::size_t>(sp.type)].kind != SpriteKind::Immovable && !inside(sp.pos)) {
        ++s_.bad_frames_;
        break;
      }
    }
    s_.status_ = check_termination(s_);
  }

 private:
  const CompiledGame::Type& type_of(const SpriteInstance& sp) const { return g_.types()[static_cast<std::size_t>(sp.type)]; }

  bool inside(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < g_.width() && p.y < g_.height(); }

  bool ready(const SpriteInstance& sp) const { return s_.frame_ - sp.last_move >= type_of(sp).period; }

  int spawn(int type, Position pos, Direction orientation)
  {
    if (s_.sprites_.size() >= kMaxSprites) throw EngineFault("sprite limit exceeded");
    SpriteInstance sp;
    sp.id = s_.next_id_++;
    sp.type = static_cast<std::int16_t>(type);
    sp.pos = pos;
    sp.prev = pos;
    sp.orientation = orientation;
    sp.last_move = s_.frame_;
    s_.sprites_.push_back(sp);
    ++s_.counts_[static_cast<std::size_t>(type)];
    int k = static_cast<int>(s_.sprites_.size()) - 1;
    if (t_index.live) index_insert(k);
    return k;
  }

  void kill(int i)
  {
    auto& sp = s_.sprites_[static_cast<std::size_t>(i)];
    if (!sp.alive) return;
    sp.alive = false;
    --s_.counts_[static_cast<std::size_t>(sp.type)];
  }

  Direction spawn_orientation(int type, Direction inherited) const
  {
    const auto& t = g_.types()[static_cast<std::size_t>(type)];
    return t.orientation != Direction::None ? t.orientation : inherited;
  }

  void act_avatar(Action action)
  {
    auto legal = g_.legal_actions();
    if (std::find(legal.begin(), legal.end(), action) == legal.end())
      throw std::invalid_argument("action " + std::string(to_string(action)) + " not available to this avatar");
    int idx = -1;
    for (std::size_t i = 0; i < s_.sprites_.size(); ++i) {
      if (s_.sprites_[i].alive && s_.sprites_[i].type == g_.avatar_type()) {
        idx = static_cast<int>(i);
        break;
      }
    }
    if (idx < 0) return;
    auto& av = s_.sprites_[static_cast<std::size_t>(idx)];
    const auto& t = type_of(av);
    Direction dir = direction_of(action);

    if (action == Action::Use) {
      if (t.limit > 0 && s_.counts_[static_cast<std::size_t>(t.stype)] >= t.limit) return;
      Direction facing = t.kind == SpriteKind::FlakAvatar ? Direction::Up
                         : av.orientation == Direction::None ? Direction::Up
                                                              : av.orientation;
      Position at = moved(av.pos, facing);
      const auto& shot = g_.types()[static_cast<std::size_t>(t.stype)];
      spawn(t.stype, at, shot.kind == SpriteKind::Missile ? facing : spawn_orientation(t.stype, facing));
      return;
    }

    if (t.kind == SpriteKind::OngoingAvatar) {
      if (dir != Direction::None) av.orientation = dir;
      if (av.orientation != Direction::None && ready(av)) {
        av.pos = moved(av.pos, av.orientation);
        av.last_move = s_.frame_;
      }
      return;
    }
    if (dir == Direction::None) return;
    if (t.kind != SpriteKind::FlakAvatar) av.orientation = dir;
    if (ready(av)) {
      av.pos = moved(av.pos, dir);
      av.last_move = s_.frame_;
    }
  }

  // Move minimizing (chase) or maximizing (flee) Euclidean distance to the
  // nearest live target; ties keep the first direction in kMoveOrder.
  Direction steer(const SpriteInstance& sp, int target, bool flee)
  {
    bool any = false;
    for (const auto& o : s_.sprites_)
      if (o.alive && o.type == target && o.id != sp.id) {
        any = true;
        break;
      }
    if (!any) return kMoveOrder[uniform_index(s_.rng_, 4)];
    Direction best = Direction::None;
    long best_d = 0;
    for (Direction d : kMoveOrder) {
      Position p = moved(sp.pos, d);
      long nearest = std::numeric_limits<long>::max();
      for (const auto& o : s_.sprites_) {
        if (!o.alive || o.type != target || o.id == sp.id) continue;
        long dx = o.pos.x - p.x;
        long dy = o.pos.y - p.y;
        nearest = std::min(nearest, dx * dx + dy * dy);
      }
      if (best == Direction::None || (flee ? nearest > best_d : nearest < best_d)) {
        best = d;
        best_d = nearest;
      }
    }
    return best;
  }

  void act_npcs()
  {
    const std::size_t n = s_.sprites_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!s_.sprites_[i].alive) continue;
      const auto& t = type_of(s_.sprites_[i]);
      switch (t.kind) {
      case SpriteKind::Missile:
      case SpriteKind::Bomber: {
        auto& sp = s_.sprites_[i];
        if (sp.orientation != Direction::None && ready(sp)) {
          sp.pos = moved(sp.pos, sp.orientation);
          sp.last_move = s_.frame_;
        }
        // Nothing is dropped from outside the level.
        if (t.kind == SpriteKind::Bomber && bernoulli(s_.rng_, t.prob) && inside(sp.pos)) {
          Position at = sp.pos;
          spawn(t.stype, at, spawn_orientation(t.stype, Direction::Down));
        }
        break;
      }
      case SpriteKind::RandomNPC: {
        auto& sp = s_.sprites_[i];
        if (!ready(sp)) break;
        Direction d = kMoveOrder[uniform_index(s_.rng_, 4)];
        sp.orientation = d;
        sp.pos = moved(sp.pos, d);
        sp.last_move = s_.frame_;
        break;
      }
      case SpriteKind::Chaser:
      case SpriteKind::Fleeing: {
        if (!ready(s_.sprites_[i])) break;
        Direction d = steer(s_.sprites_[i], t.stype, t.kind == SpriteKind::Fleeing);
        auto& sp = s_.sprites_[i];
        sp.orientation = d;
        sp.pos = moved(sp.pos, d);
        sp.last_move = s_.frame_;
        break;
      }
      case SpriteKind::SpawnPoint: {
        auto& sp = s_.sprites_[i];
        if (!ready(sp)) break;
        sp.last_move = s_.frame_;
        if (!bernoulli(s_.rng_, t.prob)) break;
        Position at = sp.pos;
        spawn(t.stype, at, spawn_orientation(t.stype, Direction::Down));
        auto& spawner = s_.sprites_[i];
        ++spawner.spawned;
        if (t.total > 0 && spawner.spawned >= t.total) kill(static_cast<int>(i));
        break;
      }
      default:
        break;
      }
    }
  }

  int bucket_of(Position p) const { return inside(p) ? p.y * g_.width() + p.x : g_.width() * g_.height(); }

  void link(int k)
  {
    auto& ix = t_index;
    auto u = static_cast<std::size_t>(k);
    int b = bucket_of(s_.sprites_[u].pos);
    ix.bucket[u] = b;
    ix.prev[u] = -1;
    ix.next[u] = ix.head[static_cast<std::size_t>(b)];
    if (ix.next[u] >= 0) ix.prev[static_cast<std::size_t>(ix.next[u])] = k;
    ix.head[static_cast<std::size_t>(b)] = k;
  }

  void unlink(int k)
  {
    auto& ix = t_index;
    auto u = static_cast<std::size_t>(k);
    if (ix.prev[u] >= 0)
      ix.next[static_cast<std::size_t>(ix.prev[u])] = ix.next[u];
    else
      ix.head[static_cast<std::size_t>(ix.bucket[u])] = ix.next[u];
    if (ix.next[u] >= 0) ix.prev[static_cast<std::size_t>(ix.next[u])] = ix.prev[u];
  }

  void index_insert(int k)
  {
    auto& ix = t_index;
    ix.next.push_back(-1);
    ix.prev.push_back(-1);
    ix.bucket.push_back(-1);
    link(k);
    ix.by_type[static_cast<std::size_t>(s_.sprites_[static_cast<std::size_t>(k)].type)].push_back(k);
  }

  void relocate(int k, Position p)
  {
    auto& sp = s_.sprites_[static_cast<std::size_t>(k)];
    if (sp.pos == p) return;
    sp.pos = p;
    if (!t_index.live) return;
    unlink(k);
    link(k);
  }

  void build_index()
  {
    auto& ix = t_index;
    const std::size_t n = s_.sprites_.size();
    ix.head.assign(static_cast<std::size_t>(g_.width() * g_.height() + 1), -1);
    ix.next.assign(n, -1);
    ix.prev.assign(n, -1);
    ix.bucket.assign(n, -1);
    if (ix.by_type.size() < g_.types().size()) ix.by_type.resize(g_.types().size());
    for (auto& v : ix.by_type) v.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (!s_.sprites_[k].alive) continue;
      link(static_cast<int>(k));
      ix.by_type[static_cast<std::size_t>(s_.sprites_[k].type)].push_back(static_cast<int>(k));
    }
    ix.live = true;
  }

  // Sprite indices follow ids, so sorting pairs by (cell, first, second)
  // gives row-major cell order and then instance id.
  void resolve_collisions()
  {
    const auto& rules = g_.rules();
    auto& ix = t_index;
    build_index();
    const int off_grid = g_.width() * g_.height();
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const auto& rule = rules[r];
      if (s_.counts_[static_cast<std::size_t>(rule.first)] == 0) continue;
      if (rule.second >= 0 && s_.counts_[static_cast<std::size_t>(rule.second)] == 0) continue;
      ix.pairs.clear();
      for (int a : ix.by_type[static_cast<std::size_t>(rule.first)]) {
        const auto& sa = s_.sprites_[static_cast<std::size_t>(a)];
        if (!sa.alive) continue;
        int bucket = ix.bucket[static_cast<std::size_t>(a)];
        if (rule.second < 0) {
          if (bucket == off_grid) ix.pairs.push_back({bucket, a, -1});
          continue;
        }
        if (bucket == off_grid) continue;
        for (int b = ix.head[static_cast<std::size_t>(bucket)]; b >= 0; b = ix.next[static_cast<std::size_t>(b)]) {
          const auto& sb = s_.sprites_[static_cast<std::size_t>(b)];
          if (b != a && sb.alive && sb.type == rule.second) ix.pairs.push_back({bucket, a, b});
        }
      }
      if (ix.pairs.empty()) continue;
      std::sort(ix.pairs.begin(), ix.pairs.end());
      // Effects may spawn sprites and grow the pair list's sources, so walk a
      // fixed count.
      const std::size_t npairs = ix.pairs.size();
      for (std::size_t k = 0; k < npairs; ++k) {
        auto [cell, a, b] = ix.pairs[k];
        const auto& sa = s_.sprites_[static_cast<std::size_t>(a)];
        if (!sa.alive) continue;
        if (b >= 0) {
          const auto& sb = s_.sprites_[static_cast<std::size_t>(b)];
          if (!sb.alive || !(sb.pos == sa.pos)) continue;
        } else if (inside(sa.pos)) {
          continue;
        }
        apply(static_cast<int>(r), a, b);
      }
    }
    ix.live = false;
  }

  void apply(int r, int a, int b)
  {
    const auto& rule = g_.rules()[static_cast<std::size_t>(r)];
    ++s_.fires_[static_cast<std::size_t>(r)];
    s_.score_ += rule.score;
    auto sprite = [&](int i) -> SpriteInstance& { return s_.sprites_[static_cast<std::size_t>(i)]; };

    switch (rule.effect) {
    case Effect::KillSprite:
      kill(a);
      break;
    case Effect::KillBoth:
      kill(a);
      kill(b);
      break;
    case Effect::CollectResource: {
      const auto& res = type_of(sprite(a));
      int cap = rule.limit > 0 ? rule.limit : res.capacity;
      auto& held = sprite(b).resources[static_cast<std::size_t>(res.resource_slot)];
      if (held < cap) {
        ++held;
        kill(a);
      }
      break;
    }
    case Effect::TransformTo: {
      Position at = sprite(a).pos;
      Direction o = sprite(a).orientation;
      kill(a);
      int n = spawn(rule.stype, at, o == Direction::None ? spawn_orientation(rule.stype, o) : o);
      sprite(n).last_move = std::numeric_limits<std::int32_t>::min() / 2;
      break;
    }
    case Effect::StepBack:
      relocate(a, sprite(a).prev);
      break;
    case Effect::UndoAll:
      for (std::size_t i = 0; i < s_.sprites_.size(); ++i) relocate(static_cast<int>(i), s_.sprites_[i].prev);
      break;
    case Effect::ReverseDirection:
      sprite(a).orientation = opposite(sprite(a).orientation);
      relocate(a, sprite(a).prev);
      break;
    case Effect::TurnAround: {
      Position p = sprite(a).prev;
      ++p.y;
      sprite(a).orientation = opposite(sprite(a).orientation);
      relocate(a, p);
      break;
    }
    case Effect::CloneSprite: {
      SpriteInstance copy = sprite(a);
      int n = spawn(copy.type, copy.pos, copy.orientation);
      sprite(n).prev = copy.prev;
      break;
    }
    case Effect::AddHealthPoints: {
      auto& sp = sprite(a);
      sp.health += rule.value;
      if (rule.limit > 0) sp.health = std::min(sp.health, rule.limit);
      break;
    }
    case Effect::TeleportToExit: {
      int exit_type = type_of(sprite(b)).stype;
      std::vector<int> exits;
      for (std::size_t i = 0; i < s_.sprites_.size(); ++i)
        if (s_.sprites_[i].alive && s_.sprites_[i].type == exit_type) exits.push_back(static_cast<int>(i));
      if (exits.empty()) break;
      int e = exits[uniform_index(s_.rng_, exits.size())];
      relocate(a, sprite(e).pos);
      break;
    }
    }
  }

  void cull_and_compact()
  {
    for (std::size_t i = 0; i < s_.sprites_.size(); ++i) {
      const auto& p = s_.sprites_[i].pos;
      if (p.x < -kCullDistance || p.y < -kCullDistance || p.x >= g_.width() + kCullDistance ||
          p.y >= g_.height() + kCullDistance)
        kill(static_cast<int>(i));
    }
    std::erase_if(s_.sprites_, [](const SpriteInstance& sp) { return !sp.alive; });
  }

  GameState& s_;
  const CompiledGame& g_;
};

std::string_view to_string(Action action)
{
  switch (action) {
  case Action::Nil:
    return "NIL";
  case Action::Up:
    return "UP";
  case Action::Down:
    return "DOWN";
  case Action::Left:
    return "LEFT";
  case Action::Right:
    return "RIGHT";
  case Action::Use:
    return "USE";
  }
  return "?";
}

std::string_view to_string(GameStatus status)
{
  switch (status) {
  case GameStatus::Running:
    return "running";
  case GameStatus::Win:
    return "win";
  case GameStatus::Lose:
    return "lose";
  case GameStatus::Timeout:
    return "timeout";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view text)
{
  std::string upper(text);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Action a : kAllActions)
    if (to_string(a) == upper) return a;
  return std::nullopt;
}

const SpriteInstance* GameState::avatar() const
{
  for (const auto& sp : sprites_)
    if (sp.alive && sp.type == game_->avatar_type()) return &sp;
  return nullptr;
}

int GameState::count(std::string_view type_name) const
{
  int idx = game_->type_index(type_name);
  return idx < 0 ? 0 : counts_[static_cast<std::size_t>(idx)];
}

std::vector<int> GameState::triggered_rules() const
{
  std::vector<int> out;
  for (std::size_t i = 0; i < fires_.size(); ++i)
    if (fires_[i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

void GameState::reseed(std::uint64_t seed)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  rng_.seed(seq);
}

bool GameState::operator==(const GameState& o) const
{
  bool same_game = game_ == o.game_ || (game_ && o.game_ && game_->equivalent(*o.game_));
  return same_game && sprites_ == o.sprites_ && counts_ == o.counts_ && fires_ == o.fires_ &&
         frame_ == o.frame_ && score_ == o.score_ && bad_frames_ == o.bad_frames_ && next_id_ == o.next_id_ &&
         status_ == o.status_ && rng_ == o.rng_;
}

GameState init_state(std::shared_ptr<const CompiledGame> game, std::uint64_t seed)
{
  GameState s;
  s.game_ = std::move(game);
  const auto& g = *s.game_;
  s.counts_.assign(g.types().size(), 0);
  s.fires_.assign(g.rules().size(), 0);
  s.sprites_.reserve(g.placements().size() + 16);
  for (const auto& p : g.placements()) {
    SpriteInstance sp;
    sp.id = s.next_id_++;
    sp.type = static_cast<std::int16_t>(p.type);
    sp.pos = p.pos;
    sp.prev = p.pos;
    sp.orientation = g.types()[static_cast<std::size_t>(p.type)].orientation;
    sp.last_move = std::numeric_limits<std::int32_t>::min() / 2;
    s.sprites_.push_back(sp);
    ++s.counts_[static_cast<std::size_t>(p.type)];
  }
  s.reseed(seed);
  return s;
}

GameState init_state(const GameDescription& game, const LevelGrid& level, std::uint64_t seed)
{
  return init_state(CompiledGame::compile(game, level), seed);
}

void advance(GameState& state, Action action)
{
  if (!state.running()) throw std::logic_error("cannot step a finished game");
  Stepper(state).run(action);
}

GameState step(GameState state, Action action)
{
  advance(state, action);
  return state;
}

GameStatus check_termination(const GameState& state)
{
  const auto& g = state.game();
  for (const auto& t : g.terminations()) {
    bool fired = false;
    switch (t.kind) {
    case TerminationKind::Timeout:
      fired = state.frame() >= t.limit;
      break;
    case TerminationKind::SpriteCounter:
    case TerminationKind::MultiSpriteCounter: {
      int total = 0;
      for (int type : t.types) total += state.count(type);
      fired = total <= t.limit;
      break;
    }
    }
    if (fired) return t.win ? GameStatus::Win : GameStatus::Lose;
  }
  if (!state.avatar()) return GameStatus::Lose;
  return GameStatus::Running;
}

GameState copy_forward_model(const GameState& state) { return state; }

GameState copy_forward_model(const GameState& state, std::uint64_t reseed)
{
  GameState copy = state;
  copy.reseed(reseed);
  return copy;
}

SimulationOutcome simulate(std::shared_ptr<const CompiledGame> game, Agent& agent, int max_steps, std::uint64_t seed,
                           const FrameSink& trace)
{
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  SimulationOutcome out;
  out.total_frames = max_steps;
  out.warnings = static_cast<int>(game->report().warnings.size());
  GameState state = init_state(std::move(game), seed);
  Rng agent_rng(derive_seed(seed, 0xa9e47));
  if (trace) trace(state);
  try {
    while (state.running() && state.frame() < max_steps) {
      Action a = agent.act(state, agent_rng);
      advance(state, a);
      if (trace) trace(state);
    }
    out.status = state.status();
  } catch (const EngineFault&) {
    out.errors = 1;
    out.status = GameStatus::Lose;
  }
  out.score = state.score();
  out.steps = state.frame();
  out.triggered_rules = state.triggered_rules();
  out.bad_frames = state.bad_frames();
  return out;
}

SimulationOutcome simulate(const GameDescription& game, const LevelGrid& level, Agent& agent, int max_steps,
                           std::uint64_t seed, const FrameSink& trace)
{
  std::shared_ptr<const CompiledGame> compiled;
  try {
    compiled = CompiledGame::compile(game, level);
  } catch (const InvalidGame& e) {
    SimulationOutcome out;
    out.status = GameStatus::Lose;
    out.total_frames = max_steps;
    out.errors = static_cast<int>(e.report().errors.size());
    out.warnings = static_cast<int>(e.report().warnings.size());
    return out;
  }
  return simulate(std::move(compiled), agent, max_steps, seed, trace);
}

} // namespace gvgrg
