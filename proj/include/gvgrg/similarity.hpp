#pragma once

#include "gvgrg/vgdl.hpp"

#include <string>
#include <vector>

namespace gvgrg {

/// Tagged parts of one rule ("first=avatar", "effect=killSprite", ...).
std::vector<std::string> rule_parts(const InteractionRule& rule);
std::vector<std::string> rule_parts(const TerminationRule& rule);

/// Distance in [0,1]: each rule is matched to its closest rule in the other
/// ruleset, mismatching parts are summed and divided by the part count. The
/// larger of the two directions is returned.
double ruleset_distance(const Ruleset& a, const Ruleset& b);

struct DistanceProfile {
  std::string generator;
  std::string game;
  std::vector<std::string> names;
  std::vector<double> min_distances;
};

/// For each ruleset, the distance to its nearest other ruleset. Throws
/// std::invalid_argument for fewer than two rulesets.
DistanceProfile min_distance_profile(const std::vector<Ruleset>& rulesets);

/// "generator,game,minDistance" header plus one row per ruleset.
std::string profile_csv(const std::vector<DistanceProfile>& profiles);

} // namespace gvgrg
