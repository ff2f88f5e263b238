#pragma once

// Blind pairwise judging service: hands out pairs of generated games for one
// fixture, plays them frame by frame for a human, and records and tallies the
// judge's preference.

#include "gvgrg/engine.hpp"
#include "gvgrg/random.hpp"
#include "gvgrg/vgdl.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gvgrg {

/// Request-level failure carrying the HTTP status it maps to.
class ArenaError : public std::runtime_error {
 public:
  ArenaError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct PoolEntry {
  std::string game;
  std::string generator; // "random", "constructive" or "search"
  std::string name;
  Ruleset ruleset;
};

/// Generated rulesets grouped by fixture game.
class RulesetPool {
 public:
  /// Every entry is validated against its fixture; invalid ones throw.
  void add(PoolEntry entry);
  /// Reads DIR/<game>/<generator>/*.txt.
  static RulesetPool load(const std::filesystem::path& dir);

  const std::vector<PoolEntry>& entries(const std::string& game) const;
  std::size_t size() const;

 private:
  std::map<std::string, std::vector<PoolEntry>> by_game_;
};

enum class VoteChoice { First, Second, Both, Neither };

std::string_view to_string(VoteChoice c);
std::optional<VoteChoice> parse_vote_choice(std::string_view text);

struct VoteRecord {
  std::int64_t id = 0;
  std::string session_id;
  std::string game;
  std::string generator_a;
  std::string generator_b;
  VoteChoice choice = VoteChoice::Neither;
  std::string comment;
  std::string timestamp;

  bool operator==(const VoteRecord&) const = default;
};

std::string vote_to_json(const VoteRecord& v);
VoteRecord vote_from_json(std::string_view line);

/// Append-only newline-delimited vote log with a single serialized writer.
class VoteStore {
 public:
  /// Opens (creating if needed) the log and loads existing records.
  explicit VoteStore(std::filesystem::path file);

  /// Assigns the id and timestamp. Throws ArenaError(409) for a second vote
  /// on the same session.
  VoteRecord append(VoteRecord v);
  std::vector<VoteRecord> records() const;
  std::optional<VoteRecord> find(std::int64_t id) const;
  bool has_session(const std::string& session_id) const;

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::vector<VoteRecord> records_;
};

struct TallyCell {
  int wins = 0;  // decisive votes for the first-listed generator
  int total = 0; // decisive votes
  std::string text() const { return std::to_string(wins) + "/" + std::to_string(total); }
};

struct TallyTable {
  std::vector<std::string> games;                  // column order
  std::vector<std::string> rows;                   // "Search vs Rnd", ...
  std::map<std::string, std::map<std::string, TallyCell>> cells; // row -> game -> cell

  const TallyCell& at(const std::string& row, const std::string& game) const;
  std::string text() const;
  std::string json() const;
};

/// Counts First/Second votes only; pairs of the same generator are skipped.
TallyTable tally_preferences(const std::vector<VoteRecord>& records,
                             const std::vector<std::string>& games = {"aliens", "boulderdash", "solarfox"});

/// Display label of a generator ("Search", "Const", "Rnd").
std::string generator_label(const std::string& generator);

class SessionManager {
 public:
  SessionManager(RulesetPool pool, std::uint64_t seed);

  /// Returns the new session id. ArenaError(404) for an unknown game,
  /// (409) when the pool has fewer than two rulesets for it.
  std::string create(const std::string& game);
  /// Blind session summary as JSON (no generator labels).
  std::string describe(const std::string& id) const;
  /// Starts or restarts one game; returns its first frame record.
  std::string restart(const std::string& id, int game_index);
  /// Steps one frame (starting the game if needed); returns the frame record.
  std::string advance(const std::string& id, int game_index, const std::string& action);
  /// Checks the session may vote and returns the hidden generator pair.
  std::pair<std::string, std::string> vote_target(const std::string& id, std::string* game) const;

  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> get(const std::string& id) const;

  RulesetPool pool_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  Rng rng_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

struct ArenaConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// WebSocket port; 0 means port + 1.
  int ws_port = 0;
  std::filesystem::path pool_dir;
  std::filesystem::path votes_file = "votes.ndjson";
  std::uint64_t seed = 1;
};

/// HTTP routes plus a WebSocket endpoint (ws://host:ws_port/sessions/{id})
/// that answers each {"gameIndex","action"} message with one frame record.
class ArenaServer {
 public:
  ArenaServer(ArenaConfig config, RulesetPool pool);
  ~ArenaServer();
  ArenaServer(const ArenaServer&) = delete;
  ArenaServer& operator=(const ArenaServer&) = delete;

  /// Binds both ports and serves in background threads.
  void start();
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();

  int port() const;
  int ws_port() const;
  VoteStore& votes();
  SessionManager& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace gvgrg
