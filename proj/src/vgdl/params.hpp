#pragma once

// Value checks for VGDL parameters, shared by the parser and the validator.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace gvgrg::detail {

inline std::optional<int> parse_int(std::string_view s)
{
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s)
{
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::optional<bool> parse_bool(std::string_view s)
{
  if (s == "True" || s == "true") return true;
  if (s == "False" || s == "false") return false;
  return std::nullopt;
}

inline bool is_identifier(std::string_view s)
{
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  for (char c : s)
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

inline bool is_direction(std::string_view s)
{
  return s == "UP" || s == "DOWN" || s == "LEFT" || s == "RIGHT";
}

/// Error text for a sprite parameter, or nullopt when it is well formed.
/// Does not resolve stype references.
inline std::optional<std::string> sprite_param_error(std::string_view key, std::string_view value)
{
  std::string k(key);
  if (key == "cooldown") {
    auto v = parse_int(value);
    if (!v || *v < 1) return "cooldown must be an integer >= 1";
  } else if (key == "speed") {
    auto v = parse_double(value);
    if (!v || !(*v > 0.0)) return "speed must be a positive number";
  } else if (key == "prob") {
    auto v = parse_double(value);
    if (!v || *v < 0.0 || *v > 1.0) return "prob must lie in [0,1]";
  } else if (key == "limit" || key == "total") {
    auto v = parse_int(value);
    if (!v || *v < 0) return k + " must be a non-negative integer";
  } else if (key == "stype") {
    if (!is_identifier(value)) return "stype must be a sprite name";
  } else if (key == "orientation") {
    if (!is_direction(value)) return "orientation must be UP, DOWN, LEFT or RIGHT";
  } else {
    return "unknown sprite parameter '" + k + "'";
  }
  return std::nullopt;
}

} // namespace gvgrg::detail
