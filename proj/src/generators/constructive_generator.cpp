#include "gvgrg/generators.hpp"

#include <algorithm>
#include <map>

namespace gvgrg {

namespace {

class Builder {
 public:
  Builder(const SLDescription& sld, Rng& rng) : sld_(sld), game_(sld.game()), rng_(rng) {}

  Ruleset build()
  {
    auto stats = compute_stats(sld_);
    cat_ = categorize(stats, sld_, rng_);
    avatar_ = cat_.avatar;
    for (const auto& st : stats) initial_[st.name] = st.count;
    reachable_ = reachable_sprites(game_, {}, sld_.level());

    resources();
    score_and_spike();
    npcs();
    spawners();
    portals();
    movables();
    walls();
    bullets();
    terminations();
    return cleanse(out_);
  }

 private:
  const SpriteDef& def(const std::string& name) const { return *game_.find(name); }

  std::optional<std::string> stype_of(const std::string& name) const { return def(name).param("stype"); }

  void add(std::string first, std::string second, Effect e, int score = 0, ParamMap params = {})
  {
    InteractionRule r{std::move(first), std::move(second), e, score, std::move(params)};
    if (!interaction_error(game_, r)) out_.interactions.push_back(std::move(r));
  }

  void harmful(const std::string& s)
  {
    add(avatar_, s, Effect::KillSprite, -1);
    if (std::find(harmful_.begin(), harmful_.end(), s) == harmful_.end()) harmful_.push_back(s);
  }

  void collectible(const std::string& s, int score)
  {
    add(s, avatar_, Effect::KillSprite, score);
    if (std::find(collectible_.begin(), collectible_.end(), s) == collectible_.end()) collectible_.push_back(s);
  }

  void harmful_or_collectible(const std::string& s, int score)
  {
    if (bernoulli(rng_, 0.5))
      harmful(s);
    else
      collectible(s, score);
  }

  void resources()
  {
    for (const auto& r : cat_.resources) {
      add(r, avatar_, Effect::CollectResource, 1);
      collectible_.push_back(r);
    }
  }

  void score_and_spike()
  {
    if (cat_.score) collectible(*cat_.score, 1);
    if (cat_.spike) {
      if (bernoulli(rng_, 0.5))
        harmful(*cat_.spike);
      else
        collectible(*cat_.spike, 2);
    }
  }

  void npcs()
  {
    for (const auto& f : cat_.fleeing) {
      auto chaser = stype_of(f).value_or(avatar_);
      add(f, chaser, Effect::KillSprite, 1);
      fleeing_.push_back(f);
      if (chaser == avatar_) collectible_.push_back(f);
    }
    for (const auto& b : cat_.bomber) {
      harmful(b);
      if (auto s = stype_of(b)) {
        harmful_or_collectible(*s, 1);
        spawned_by_[*s].push_back(b);
      }
    }
    for (const auto& c : cat_.chaser) {
      auto chased = stype_of(c).value_or(avatar_);
      if (chased == avatar_) {
        harmful(c);
      } else {
        add(chased, c, Effect::KillSprite);
        if (bernoulli(rng_, 0.5)) add(c, chased, Effect::CloneSprite);
      }
    }
    for (const auto& r : cat_.random_npc) harmful_or_collectible(r, 1);
  }

  void spawners()
  {
    for (const auto& p : cat_.spawners) {
      auto s = stype_of(p);
      if (!s || is_avatar(def(*s).kind)) continue;
      harmful_or_collectible(*s, 1);
      spawned_by_[*s].push_back(p);
    }
  }

  void portals()
  {
    for (const auto& d : cat_.doors) add(d, avatar_, Effect::KillSprite);
    for (const auto& p : cat_.portals) add(avatar_, p, Effect::TeleportToExit);
  }

  void movables()
  {
    for (const auto& m : cat_.movables) harmful_or_collectible(m, 1);
  }

  void walls()
  {
    std::vector<std::string> moving;
    for (const auto& n : reachable_)
      if (is_moving(def(n).kind)) moving.push_back(n);
    bool fire = bernoulli(rng_, 0.5);
    for (const auto& m : moving) {
      if (m == cat_.wall) continue;
      SpriteKind k = def(m).kind;
      if (fire)
        add(m, cat_.wall, Effect::KillSprite);
      else if (k == SpriteKind::Missile || k == SpriteKind::Bomber)
        add(m, cat_.wall, Effect::ReverseDirection);
      else
        add(m, cat_.wall, Effect::StepBack);
    }
  }

  void bullets()
  {
    if (!is_shooting_avatar(def(avatar_).kind)) return;
    auto bullet = stype_of(avatar_);
    if (!bullet) return;
    for (const auto& h : harmful_) add(h, *bullet, Effect::KillSprite);
  }

  // The sprites plus whatever spawns them, so the count cannot reach zero
  // before the spawners are done.
  std::vector<std::string> with_spawners(const std::vector<std::string>& names) const
  {
    std::vector<std::string> out;
    auto push = [&](const std::string& n) {
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    for (const auto& n : names) {
      push(n);
      if (auto it = spawned_by_.find(n); it != spawned_by_.end())
        for (const auto& s : it->second) push(s);
    }
    return out;
  }

  int initial_count(const std::vector<std::string>& names) const
  {
    int total = 0;
    for (const auto& n : names)
      if (auto it = initial_.find(n); it != initial_.end()) total += it->second;
    return total;
  }

  static TerminationRule counter(std::vector<std::string> names, bool win)
  {
    TerminationRule t;
    t.kind = names.size() == 1 ? TerminationKind::SpriteCounter : TerminationKind::MultiSpriteCounter;
    t.sprites = std::move(names);
    t.win = win;
    return t;
  }

  void terminations()
  {
    std::vector<TerminationRule> wins;
    if (!cat_.doors.empty() && initial_count({cat_.doors.front()}) > 0) wins.push_back(counter({cat_.doors.front()}, true));
    // Harmful sprites can only be cleared when the avatar shoots them.
    if (is_shooting_avatar(def(avatar_).kind)) {
      auto h = with_spawners(harmful_);
      if (!h.empty() && initial_count(h) > 0) wins.push_back(counter(h, true));
    }
    if (!fleeing_.empty() && initial_count(fleeing_) > 0) wins.push_back(counter(fleeing_, true));
    auto c = with_spawners(collectible_);
    if (!c.empty() && initial_count(c) > 0) wins.push_back(counter(c, true));
    wins.push_back({TerminationKind::Timeout, {}, uniform_int(rng_, kMinTimeout, kMaxTimeout), true});

    out_.terminations.push_back(wins[uniform_index(rng_, wins.size())]);
    out_.terminations.push_back(counter({avatar_}, false));
  }

  const SLDescription& sld_;
  const GameDescription& game_;
  Rng& rng_;
  SpriteCategories cat_;
  std::string avatar_;
  std::map<std::string, int> initial_;
  std::vector<std::string> reachable_;
  std::vector<std::string> harmful_;
  std::vector<std::string> collectible_;
  std::vector<std::string> fleeing_;
  std::map<std::string, std::vector<std::string>> spawned_by_;
  Ruleset out_;
};

} // namespace

Ruleset generate_constructive(const SLDescription& sld, Rng& rng) { return Builder(sld, rng).build(); }

} // namespace gvgrg
