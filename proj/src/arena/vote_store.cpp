#include "gvgrg/arena.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>

namespace gvgrg {

namespace {

std::string utc_now()
{
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

std::string_view to_string(VoteChoice c)
{
  switch (c) {
  case VoteChoice::First:
    return "first";
  case VoteChoice::Second:
    return "second";
  case VoteChoice::Both:
    return "both";
  case VoteChoice::Neither:
    return "neither";
  }
  return "?";
}

std::optional<VoteChoice> parse_vote_choice(std::string_view text)
{
  for (auto c : {VoteChoice::First, VoteChoice::Second, VoteChoice::Both, VoteChoice::Neither})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

std::string vote_to_json(const VoteRecord& v)
{
  nlohmann::json j = {{"id", v.id},
                      {"sessionId", v.session_id},
                      {"game", v.game},
                      {"generatorA", v.generator_a},
                      {"generatorB", v.generator_b},
                      {"choice", std::string(to_string(v.choice))},
                      {"comment", v.comment},
                      {"timestamp", v.timestamp}};
  return j.dump();
}

VoteRecord vote_from_json(std::string_view line)
{
  auto j = nlohmann::json::parse(line);
  VoteRecord v;
  v.id = j.at("id").get<std::int64_t>();
  v.session_id = j.at("sessionId").get<std::string>();
  v.game = j.at("game").get<std::string>();
  v.generator_a = j.at("generatorA").get<std::string>();
  v.generator_b = j.at("generatorB").get<std::string>();
  auto choice = parse_vote_choice(j.at("choice").get<std::string>());
  if (!choice) throw std::invalid_argument("unknown vote choice");
  v.choice = *choice;
  v.comment = j.value("comment", "");
  v.timestamp = j.value("timestamp", "");
  return v;
}

VoteStore::VoteStore(std::filesystem::path file) : file_(std::move(file))
{
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) records_.push_back(vote_from_json(line));
  std::ofstream touch(file_, std::ios::app);
  if (!touch) throw std::runtime_error("cannot open vote log " + file_.string());
}

VoteRecord VoteStore::append(VoteRecord v)
{
  std::lock_guard lock(mu_);
  for (const auto& r : records_)
    if (r.session_id == v.session_id) throw ArenaError(409, "session already has a vote");
  v.id = records_.empty() ? 1 : records_.back().id + 1;
  if (v.timestamp.empty()) v.timestamp = utc_now();
  std::ofstream out(file_, std::ios::app);
  out << vote_to_json(v) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed to write vote log " + file_.string());
  records_.push_back(v);
  return v;
}

std::vector<VoteRecord> VoteStore::records() const
{
  std::lock_guard lock(mu_);
  return records_;
}

std::optional<VoteRecord> VoteStore::find(std::int64_t id) const
{
  std::lock_guard lock(mu_);
  for (const auto& r : records_)
    if (r.id == id) return r;
  return std::nullopt;
}

bool VoteStore::has_session(const std::string& session_id) const
{
  std::lock_guard lock(mu_);
  for (const auto& r : records_)
    if (r.session_id == session_id) return true;
  return false;
}

} // namespace gvgrg
