#pragma once

// Concrete game executor. The same turn loop can run scripted lines either by
// interpreting the packed RawActions (the historical route) or by executing
// the specialized ScriptLine IR; the two must agree exactly.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "saga/specialize.hpp"

namespace saga::engine {

using specialize::SpecializedGame;

inline constexpr std::uint32_t kDefaultSeed = 1979;

struct Ending {
  int site = -1;  // index into SpecializedGame::ending_catalog
  std::string label;
  bool operator==(const Ending&) const = default;
};

/// Mutable world state. Item locations use the internal encoding where
/// CARRIED is num_rooms + 1.
struct GameState {
  std::vector<int> item_locations;
  int current_room = 0;
  std::uint32_t flags = 0;
  std::int16_t current_counter = 0;
  std::array<std::int16_t, specialize::kNumCounters> counters{};
  std::array<int, specialize::kNumSavedRooms> saved_rooms{};
  int lamp_fuel = -1;
  int carried_count = 0;
  int turn_index = 0;
  std::optional<Ending> ended;

  bool flag(int n) const { return (flags >> n) & 1U; }
  bool operator==(const GameState&) const = default;
};

/// Fixed linear congruential generator behind every percentage roll.
class Rng {
 public:
  explicit Rng(std::uint32_t seed = kDefaultSeed) : state_(seed) {}
  std::uint32_t state() const { return state_; }
  /// Advances one step and returns the new state.
  std::uint32_t next();
  bool operator==(const Rng&) const = default;

 private:
  std::uint32_t state_;
};

/// One draw: ((state' / 65536) mod 100) < p.
bool random_percent(Rng& rng, int p);

/// Generator positioned after `draws` steps from `seed`.
Rng rng_after(std::uint32_t seed, std::int64_t draws);

struct TurnResult {
  std::vector<std::string> messages;
  std::optional<Ending> ending;
  bool look_requested = false;
  bool operator==(const TurnResult&) const = default;
};

enum class LineExecution { kRaw, kSpecialized };

struct Move {
  int verb = 0;
  int noun = 0;
  bool operator==(const Move&) const = default;
};

class Engine {
 public:
  explicit Engine(const SpecializedGame& game, LineExecution mode = LineExecution::kSpecialized);

  const SpecializedGame& game() const { return game_; }

  /// World before the first automatics pass.
  GameState initial_state() const;

  /// The automatics pass that precedes the first command.
  TurnResult run_initial_automatics(GameState& state, Rng& rng) const;

  /// Player command, lamp bookkeeping, then one automatics pass. Throws
  /// saga::Error without touching `state` for an ended game or an
  /// out-of-range verb/noun.
  TurnResult perform_turn(GameState& state, Rng& rng, int verb, int noun) const;

  int count_carried(const GameState& state) const;
  std::optional<int> match_up_item(int noun, int location, const GameState& state) const;
  bool lamp_present(const GameState& state) const;
  bool is_dark(const GameState& state) const;
  std::vector<std::string> describe_room(const GameState& state) const;

 private:
  friend class TurnRunner;
  const SpecializedGame& game_;
  LineExecution mode_;
};

/// Everything a human needs to judge a replayed trace.
struct ReplayStep {
  Move move;
  std::vector<std::string> messages;
};

struct ReplayReport {
  GameState final_state;
  std::vector<std::string> opening_messages;  // initial automatics
  std::vector<ReplayStep> steps;
  std::optional<Ending> ending;
  int ending_move = -1;  // 1-based move that ended the game; 0 = before any move
};

class ReplayError : public Error {
 public:
  ReplayError(int move_index, const std::string& message);
  int move_index() const { return move_index_; }

 private:
  int move_index_;
};

/// Runs the initial automatics and then every move. A move after the game
/// has ended raises ReplayError naming its 1-based index.
ReplayReport replay_trace(const SpecializedGame& game, std::uint32_t seed, const std::vector<Move>& moves,
                          LineExecution mode = LineExecution::kSpecialized);

/// Result of matching typed words against the vocabulary.
struct ParsedWords {
  std::optional<Move> move;
  std::string error;  // set when move is empty
};

ParsedWords parse_player_words(std::string_view text, const db::GameDatabase& db);

/// Trace file: "seed <n>" then one "<verb> <noun>" pair per line; '#' starts a
/// comment.
struct TraceFile {
  std::uint32_t seed = kDefaultSeed;
  std::vector<Move> moves;
};

class TraceParseError : public Error {
 public:
  TraceParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

TraceFile read_trace(std::istream& in);
/// Writes moves with the resolved words in the comment column.
void write_trace(std::ostream& out, const TraceFile& trace, const db::GameDatabase& db);

}  // namespace saga::engine
