#pragma once

// Deterministic grid forward model for the VGDL subset.
//
// One call to step() advances one frame (40 ms of game time):
//   1. the avatar acts (move or shoot, per kind and cooldown),
//   2. autonomous sprites act in id order,
//   3. collisions are resolved rule by rule in interaction-set order, pairs in
//      row-major cell order then instance id; sprites outside the grid collide
//      with EOS,
//   4. sprites more than 10 cells outside the grid are culled,
//   5. the frame counter advances, terminations are checked in declaration
//      order, and a bad frame is counted if a live non-Immovable sprite is
//      outside the grid.

#include "gvgrg/random.hpp"
#include "gvgrg/vgdl.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gvgrg {

inline constexpr int kFrameMillis = 40;

enum class Action : std::uint8_t { Nil, Up, Down, Left, Right, Use };
enum class Direction : std::uint8_t { None, Up, Down, Left, Right };
enum class GameStatus : std::uint8_t { Running, Win, Lose, Timeout };

inline constexpr Action kAllActions[] = {Action::Nil, Action::Up, Action::Down, Action::Left, Action::Right, Action::Use};

std::string_view to_string(Action action);
std::string_view to_string(GameStatus status);
std::optional<Action> parse_action(std::string_view text);

struct Position {
  std::int16_t x = 0;
  std::int16_t y = 0;
  bool operator==(const Position&) const = default;
};

inline constexpr int kMaxResourceKinds = 4;

struct SpriteInstance {
  std::int32_t id = 0;
  std::int16_t type = 0;
  Direction orientation = Direction::None;
  bool alive = true;
  Position pos;
  Position prev;
  std::int32_t health = 0;
  std::int32_t last_move = 0;
  std::int32_t spawned = 0;
  std::array<std::int16_t, kMaxResourceKinds> resources{};

  bool operator==(const SpriteInstance&) const = default;
};

/// Raised by init_state when the ruleset does not validate.
class InvalidGame : public std::runtime_error {
 public:
  explicit InvalidGame(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Raised from step() when the game cannot be simulated further (for
/// example unbounded sprite cloning).
class EngineFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable, index-resolved form of a game and its level, shared by every
/// state of one game.
class CompiledGame {
 public:
  struct Type {
    std::string name;
    SpriteKind kind = SpriteKind::Immovable;
    int period = 1;    // frames between moves or spawn attempts
    int stype = -1;
    double prob = 0.0;
    int limit = 0;     // shooting avatars: max live shots, 0 = unlimited
    int total = 0;     // SpawnPoint: spawns before it expires, 0 = unlimited
    int capacity = 0;  // Resource: max units a collector holds
    int resource_slot = -1;
    Direction orientation = Direction::None;

    bool operator==(const Type&) const = default;
  };
  struct Rule {
    int first = 0;
    int second = -1; // -1 is EOS
    Effect effect = Effect::KillSprite;
    int score = 0;
    int stype = -1;
    int value = 1;
    int limit = 0;

    bool operator==(const Rule&) const = default;
  };
  struct Termination {
    TerminationKind kind = TerminationKind::Timeout;
    std::vector<int> types;
    int limit = 0;
    bool win = false;

    bool operator==(const Termination&) const = default;
  };
  struct Placement {
    Position pos;
    int type = 0;

    bool operator==(const Placement&) const = default;
  };

  /// Throws InvalidGame if the game's ruleset has validation errors.
  static std::shared_ptr<const CompiledGame> compile(const GameDescription& game, const LevelGrid& level);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Type>& types() const { return types_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Termination>& terminations() const { return terminations_; }
  const std::vector<Placement>& placements() const { return placements_; }
  int avatar_type() const { return avatar_type_; }
  /// True when the type is the first sprite of some interaction rule.
  bool is_first_type(int type) const { return first_types_[static_cast<std::size_t>(type)]; }
  int type_index(std::string_view name) const;
  /// Same types, rules, terminations and level placements.
  bool equivalent(const CompiledGame& other) const;
  std::span<const Action> legal_actions() const { return legal_actions_; }
  const GameDescription& description() const { return description_; }
  const ValidationReport& report() const { return report_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Type> types_;
  std::vector<Rule> rules_;
  std::vector<Termination> terminations_;
  std::vector<Placement> placements_;
  std::vector<Action> legal_actions_;
  std::vector<bool> first_types_;
  int avatar_type_ = 0;
  GameDescription description_;
  ValidationReport report_;
};

class GameState {
 public:
  const CompiledGame& game() const { return *game_; }
  const std::shared_ptr<const CompiledGame>& game_ptr() const { return game_; }

  int frame() const { return frame_; }
  int score() const { return score_; }
  GameStatus status() const { return status_; }
  bool running() const { return status_ == GameStatus::Running; }
  int bad_frames() const { return bad_frames_; }

  std::span<const SpriteInstance> sprites() const { return sprites_; }
  std::string_view type_name(const SpriteInstance& s) const { return game_->types()[static_cast<std::size_t>(s.type)].name; }
  /// First live avatar, or nullptr once it has died.
  const SpriteInstance* avatar() const;
  std::span<const Action> legal_actions() const { return game_->legal_actions(); }
  int count(int type) const { return counts_[static_cast<std::size_t>(type)]; }
  int count(std::string_view type_name) const;

  /// Times each interaction rule fired, indexed like the ruleset.
  const std::vector<int>& rule_fire_counts() const { return fires_; }
  std::vector<int> triggered_rules() const;

  /// Replaces the engine's random stream (used for independent rollouts).
  void reseed(std::uint64_t seed);
  /// Marks a running game as stopped by an external frame cap.
  void force_status(GameStatus status) { status_ = status; }

  bool operator==(const GameState& other) const;

 private:
  friend GameState init_state(std::shared_ptr<const CompiledGame> game, std::uint64_t seed);
  friend class Stepper;

  std::shared_ptr<const CompiledGame> game_;
  std::vector<SpriteInstance> sprites_;
  std::vector<int> counts_;
  std::vector<int> fires_;
  int frame_ = 0;
  int score_ = 0;
  int bad_frames_ = 0;
  std::int32_t next_id_ = 0;
  GameStatus status_ = GameStatus::Running;
  std::minstd_rand rng_;
};

GameState init_state(std::shared_ptr<const CompiledGame> game, std::uint64_t seed);
/// Compiles and initializes; throws InvalidGame when validation fails.
GameState init_state(const GameDescription& game, const LevelGrid& level, std::uint64_t seed);

/// Advances the state one frame in place. Throws std::logic_error if the game
/// is over and std::invalid_argument if the avatar kind cannot take `action`.
void advance(GameState& state, Action action);
GameState step(GameState state, Action action);

/// Evaluates the termination set (then implicit avatar death) against the
/// state as it stands.
GameStatus check_termination(const GameState& state);

/// Independent deep copy. Optionally gives the copy its own random stream.
GameState copy_forward_model(const GameState& state);
GameState copy_forward_model(const GameState& state, std::uint64_t reseed);

/// Game-playing controller. Implementations must not keep state that
/// changes their choices between calls.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual Action act(const GameState& state, Rng& rng) = 0;
  virtual std::string_view name() const = 0;
};

struct SimulationOutcome {
  GameStatus status = GameStatus::Running;
  int score = 0;
  int steps = 0;
  std::vector<int> triggered_rules;
  int bad_frames = 0;
  int total_frames = 0;
  int errors = 0;
  int warnings = 0;

  bool operator==(const SimulationOutcome&) const = default;
};

using FrameSink = std::function<void(const GameState&)>;

/// Plays one game from a fresh state until it ends or `max_steps` frames have
/// run (status stays Running when truncated). Validation errors and engine
/// faults are counted into `errors` rather than thrown.
SimulationOutcome simulate(const GameDescription& game, const LevelGrid& level, Agent& agent, int max_steps,
                           std::uint64_t seed, const FrameSink& trace = {});
SimulationOutcome simulate(std::shared_ptr<const CompiledGame> game, Agent& agent, int max_steps,
                           std::uint64_t seed, const FrameSink& trace = {});

/// One frame-trace record: frame, score, status and the grid as per-cell
/// comma-separated sprite lists, as a single JSON line.
std::string frame_record(const GameState& state);
/// Grid rows of comma-separated sprite names (sprites outside the grid are
/// omitted).
std::vector<std::vector<std::string>> grid_strings(const GameState& state);

} // namespace gvgrg
