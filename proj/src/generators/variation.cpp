#include "gvgrg/generators.hpp"

#include <algorithm>
#include <variant>

namespace gvgrg {

namespace {

using Gene = std::variant<InteractionRule, TerminationRule>;

std::vector<Gene> genes(const Ruleset& r)
{
  std::vector<Gene> out;
  for (const auto& i : r.interactions) out.emplace_back(i);
  for (const auto& t : r.terminations) out.emplace_back(t);
  return out;
}

Ruleset assemble(const std::vector<Gene>& head, std::size_t head_len, const std::vector<Gene>& tail,
                 std::size_t tail_from)
{
  Ruleset out;
  auto put = [&](const Gene& g) {
    if (auto* i = std::get_if<InteractionRule>(&g))
      out.interactions.push_back(*i);
    else
      out.terminations.push_back(std::get<TerminationRule>(g));
  };
  for (std::size_t i = 0; i < head_len; ++i) put(head[i]);
  for (std::size_t i = tail_from; i < tail.size(); ++i) put(tail[i]);
  return cleanse(out);
}

class Mutator {
 public:
  Mutator(const GameDescription& game, Rng& rng) : game_(game), rng_(rng)
  {
    for (const auto& s : game.sprites) pool_.push_back(s.name);
    pool_.emplace_back(kEos);
  }

  void round(Ruleset& r)
  {
    bool interactions = bernoulli(rng_, 0.5);
    int type = static_cast<int>(uniform_index(rng_, 3));
    bool parameter = bernoulli(rng_, 0.5);
    if (interactions)
      mutate_interactions(r, type, parameter);
    else
      mutate_terminations(r, type, parameter);
  }

 private:
  enum { Insert, Delete, Modify };

  std::string random_sprite()
  {
    std::vector<std::string> names;
    for (const auto& s : game_.sprites) names.push_back(s.name);
    return pick(rng_, names);
  }

  void insert_rule(Ruleset& r)
  {
    if (auto rule = random_interaction(game_, pool_, rng_)) r.interactions.push_back(*rule);
  }

  void modify_rule(Ruleset& r)
  {
    if (r.interactions.empty()) return insert_rule(r);
    auto& rule = r.interactions[uniform_index(rng_, r.interactions.size())];
    auto options = valid_interactions(game_, rule.first, rule.second, rule.score_change, rng_);
    std::erase_if(options, [&](const InteractionRule& o) { return o.effect == rule.effect; });
    if (options.empty()) return;
    rule = options[uniform_index(rng_, options.size())];
  }

  // Parameter slots: scoreChange on every rule plus the effect's own keys.
  void mutate_interactions(Ruleset& r, int type, bool parameter)
  {
    if (!parameter) {
      if (type == Insert) return insert_rule(r);
      if (type == Delete) {
        if (r.interactions.empty()) return insert_rule(r);
        r.interactions.erase(r.interactions.begin() +
                             static_cast<std::ptrdiff_t>(uniform_index(rng_, r.interactions.size())));
        return;
      }
      return modify_rule(r);
    }
    if (r.interactions.empty()) return insert_rule(r);
    auto& rule = r.interactions[uniform_index(rng_, r.interactions.size())];
    std::vector<std::string> optional_keys;
    if (rule.effect == Effect::AddHealthPoints) optional_keys = {"value", "limit"};
    if (rule.effect == Effect::CollectResource) optional_keys = {"limit"};

    if (type == Insert) {
      std::vector<std::string> missing;
      if (rule.score_change == 0) missing.emplace_back("scoreChange");
      for (const auto& k : optional_keys)
        if (!rule.params.count(k)) missing.push_back(k);
      if (missing.empty()) return modify_param(rule);
      const auto& key = pick(rng_, missing);
      if (key == "scoreChange")
        rule.score_change = nonzero_score();
      else
        rule.params[key] = std::to_string(uniform_int(rng_, 1, 5));
      return;
    }
    if (type == Delete) {
      std::vector<std::string> present;
      if (rule.score_change != 0) present.emplace_back("scoreChange");
      for (const auto& k : optional_keys)
        if (rule.params.count(k)) present.push_back(k);
      if (present.empty()) return modify_param(rule);
      const auto& key = pick(rng_, present);
      if (key == "scoreChange")
        rule.score_change = 0;
      else
        rule.params.erase(key);
      return;
    }
    modify_param(rule);
  }

  int nonzero_score()
  {
    int v = uniform_int(rng_, kMinScoreChange, kMaxScoreChange - 1);
    return v >= 0 ? v + 1 : v;
  }

  void modify_param(InteractionRule& rule)
  {
    std::vector<std::string> keys = {"scoreChange"};
    for (const auto& [k, v] : rule.params) keys.push_back(k);
    const auto key = pick(rng_, keys);
    if (key == "scoreChange") {
      rule.score_change = uniform_int(rng_, kMinScoreChange, kMaxScoreChange);
    } else if (key == "stype") {
      InteractionRule candidate = rule;
      candidate.params["stype"] = random_sprite();
      if (!interaction_error(game_, candidate)) rule = candidate;
    } else {
      rule.params[key] = std::to_string(uniform_int(rng_, 1, 5));
    }
  }

  static int count_outcome(const Ruleset& r, bool win)
  {
    return static_cast<int>(std::count_if(r.terminations.begin(), r.terminations.end(),
                                          [&](const TerminationRule& t) { return t.win == win; }));
  }

  std::vector<std::string> sprite_names() const
  {
    std::vector<std::string> names;
    for (const auto& s : game_.sprites) names.push_back(s.name);
    return names;
  }

  void modify_termination(Ruleset& r)
  {
    if (r.terminations.empty()) {
      r.terminations.push_back(random_termination(game_, sprite_names(), bernoulli(rng_, 0.5), rng_));
      return;
    }
    auto& t = r.terminations[uniform_index(rng_, r.terminations.size())];
    auto fresh = random_termination(game_, sprite_names(), t.win, rng_);
    // Keep the old sprites where the new kind can hold them.
    if (fresh.kind == TerminationKind::SpriteCounter && !t.sprites.empty()) fresh.sprites = {t.sprites.front()};
    if (fresh.kind == TerminationKind::MultiSpriteCounter && t.sprites.size() >= 2) fresh.sprites = t.sprites;
    t = fresh;
  }

  void mutate_terminations(Ruleset& r, int type, bool parameter)
  {
    auto names = sprite_names();
    if (!parameter) {
      if (type == Insert) {
        r.terminations.push_back(random_termination(game_, names, bernoulli(rng_, 0.5), rng_));
        return;
      }
      if (type == Delete) {
        std::vector<std::size_t> removable;
        for (std::size_t i = 0; i < r.terminations.size(); ++i)
          if (count_outcome(r, r.terminations[i].win) > 1) removable.push_back(i);
        if (removable.empty()) return modify_termination(r);
        r.terminations.erase(r.terminations.begin() + static_cast<std::ptrdiff_t>(pick(rng_, removable)));
        return;
      }
      return modify_termination(r);
    }
    if (r.terminations.empty()) return modify_termination(r);
    auto& t = r.terminations[uniform_index(rng_, r.terminations.size())];
    if (type == Insert && t.kind != TerminationKind::Timeout) {
      std::vector<std::string> extra;
      for (const auto& n : names)
        if (std::find(t.sprites.begin(), t.sprites.end(), n) == t.sprites.end()) extra.push_back(n);
      if (!extra.empty()) {
        t.sprites.push_back(pick(rng_, extra));
        t.kind = TerminationKind::MultiSpriteCounter;
        return;
      }
    }
    if (type == Delete && t.kind == TerminationKind::MultiSpriteCounter && t.sprites.size() > 2) {
      t.sprites.erase(t.sprites.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng_, t.sprites.size())));
      return;
    }
    // Modify: re-roll the limit, or swap one sprite.
    if (t.kind == TerminationKind::Timeout || bernoulli(rng_, 0.5)) {
      t.limit = t.kind == TerminationKind::Timeout ? uniform_int(rng_, kMinTimeout, kMaxTimeout) : uniform_int(rng_, 0, 3);
    } else {
      auto& s = t.sprites[uniform_index(rng_, t.sprites.size())];
      auto n = pick(rng_, names);
      if (std::find(t.sprites.begin(), t.sprites.end(), n) == t.sprites.end()) s = n;
    }
  }

  const GameDescription& game_;
  Rng& rng_;
  std::vector<std::string> pool_;
};

} // namespace

std::pair<Ruleset, Ruleset> crossover_at(const Ruleset& a, const Ruleset& b, std::size_t cut_a, std::size_t cut_b)
{
  auto ga = genes(a);
  auto gb = genes(b);
  cut_a = std::min(cut_a, ga.size());
  cut_b = std::min(cut_b, gb.size());
  return {assemble(ga, cut_a, gb, cut_b), assemble(gb, cut_b, ga, cut_a)};
}

std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& a, const Chromosome& b, Rng& rng)
{
  std::size_t cut_a = uniform_index(rng, a.ruleset.size() + 1);
  std::size_t cut_b = uniform_index(rng, b.ruleset.size() + 1);
  auto [ra, rb] = crossover_at(a.ruleset, b.ruleset, cut_a, cut_b);
  Chromosome ca;
  ca.ruleset = std::move(ra);
  Chromosome cb;
  cb.ruleset = std::move(rb);
  return {std::move(ca), std::move(cb)};
}

Ruleset mutate(const Ruleset& ruleset, const GameDescription& game, Rng& rng, int max_rounds)
{
  Ruleset out = ruleset;
  Mutator m(game, rng);
  int rounds = uniform_int(rng, 1, std::max(1, max_rounds));
  for (int i = 0; i < rounds; ++i) m.round(out);
  return cleanse(out);
}

Chromosome mutate(const Chromosome& c, const SLDescription& sld, Rng& rng, int max_rounds)
{
  Chromosome out;
  out.ruleset = mutate(c.ruleset, sld.game(), rng, max_rounds);
  return out;
}

} // namespace gvgrg
