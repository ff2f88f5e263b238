#include "gvgrg/similarity.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gvgrg {

namespace {

using Parts = std::vector<std::string>;

std::vector<Parts> decompose(const Ruleset& r)
{
  std::vector<Parts> out;
  for (const auto& i : r.interactions) out.push_back(rule_parts(i));
  for (const auto& t : r.terminations) out.push_back(rule_parts(t));
  for (auto& p : out) std::sort(p.begin(), p.end());
  return out;
}

// Parts of x with no counterpart in y (multiset difference size).
std::size_t mismatch(const Parts& x, const Parts& y)
{
  std::size_t common = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return x.size() - common;
}

double directed(const std::vector<Parts>& a, const std::vector<Parts>& b)
{
  std::size_t total = 0;
  for (const auto& x : a) total += x.size();
  if (total == 0) return b.empty() ? 0.0 : 1.0;
  if (b.empty()) return 1.0;
  std::size_t missing = 0;
  for (const auto& x : a) {
    std::size_t best = x.size();
    for (const auto& y : b) best = std::min(best, mismatch(x, y));
    missing += best;
  }
  return static_cast<double>(missing) / static_cast<double>(total);
}

} // namespace

std::vector<std::string> rule_parts(const InteractionRule& rule)
{
  std::vector<std::string> parts = {"first=" + rule.first, "second=" + rule.second,
                                    "effect=" + std::string(to_string(rule.effect)),
                                    "score=" + std::to_string(rule.score_change)};
  for (const auto& [k, v] : rule.params) parts.push_back("param:" + k + "=" + v);
  return parts;
}

std::vector<std::string> rule_parts(const TerminationRule& rule)
{
  std::vector<std::string> parts = {"kind=" + std::string(to_string(rule.kind)),
                                    "limit=" + std::to_string(rule.limit),
                                    std::string("win=") + (rule.win ? "True" : "False")};
  for (const auto& s : rule.sprites) parts.push_back("sprite=" + s);
  return parts;
}

double ruleset_distance(const Ruleset& a, const Ruleset& b)
{
  auto pa = decompose(a);
  auto pb = decompose(b);
  return std::max(directed(pa, pb), directed(pb, pa));
}

DistanceProfile min_distance_profile(const std::vector<Ruleset>& rulesets)
{
  if (rulesets.size() < 2) throw std::invalid_argument("need at least two rulesets");
  const std::size_t n = rulesets.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = ruleset_distance(rulesets[i], rulesets[j]);
      best[i] = std::min(best[i], d);
      best[j] = std::min(best[j], d);
    }
  }
  DistanceProfile p;
  p.min_distances = std::move(best);
  for (std::size_t i = 0; i < n; ++i) p.names.push_back(std::to_string(i));
  return p;
}

std::string profile_csv(const std::vector<DistanceProfile>& profiles)
{
  std::ostringstream out;
  out.precision(17);
  out << "generator,game,minDistance\n";
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < p.min_distances.size(); ++i) {
      std::string game = i < p.names.size() ? p.names[i] : p.game;
      out << p.generator << ',' << game << ',' << p.min_distances[i] << '\n';
    }
  }
  return out.str();
}

} // namespace gvgrg
