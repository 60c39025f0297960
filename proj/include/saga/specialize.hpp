#pragma once

// Lowering of the packed script program into a decoded, per-game IR.
//
// Each raw action line becomes a ScriptLine whose trigger, conditions and
// effects are fully decoded, with the parameter queue of the original
// interpreter resolved at specialization time: every operand an effect will
// read is bound to a constant here, so executors never see opcode-0
// conditions or a parameter pointer.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "saga/dbformat.hpp"

namespace saga::specialize {

enum class ConditionOp : std::uint8_t {
  kParam = 0,
  kCarried = 1,
  kHere = 2,
  kPresent = 3,  // carried or here
  kInRoom = 4,
  kNotHere = 5,
  kNotCarried = 6,
  kNotInRoom = 7,
  kFlagSet = 8,
  kFlagClear = 9,
  kCarryingAny = 10,
  kCarryingNone = 11,
  kNotPresent = 12,
  kInPlay = 13,
  kNotInPlay = 14,
  kCounterLe = 15,
  kCounterGt = 16,
  kAtInitial = 17,
  kMoved = 18,
  kCounterEq = 19,
};

enum class EffectOp : std::uint8_t {
  kNop = 0,
  kMessage = 1,  // act 1..51 or >= 102
  kGet = 52,
  kDrop = 53,
  kGoto = 54,
  kRemove = 55,
  kSetDark = 56,
  kClearDark = 57,
  kSetFlag = 58,
  kRemove2 = 59,
  kClearFlag = 60,
  kDie = 61,
  kPutItem = 62,
  kGameOver = 63,
  kLook = 64,
  kScore = 65,
  kInventory = 66,
  kSetFlag0 = 67,
  kClearFlag0 = 68,
  kRefillLamp = 69,
  kClearScreen = 70,
  kSave = 71,
  kSwapItems = 72,
  kContinue = 73,
  kTake = 74,
  kPutWith = 75,
  kLook2 = 76,
  kDecCounter = 77,
  kPrintCounter = 78,
  kSetCounter = 79,
  kSwapRoom = 80,
  kSelectCounter = 81,
  kAddCounter = 82,
  kSubCounter = 83,
  kPrintNoun = 84,
  kPrintNounLine = 85,
  kNewline = 86,
  kSwapSavedRoom = 87,
  kPause = 88,
  kNop89 = 89,
};

/// What an effect operand indexes; drives validation and placeholder pruning.
enum class OperandKind : std::uint8_t { kItem, kRoom, kRoomOrCarried, kFlag, kCounterValue, kCounterSlot, kSavedRoomSlot };

inline constexpr int kNumFlags = 32;
inline constexpr int kDarkFlag = 15;
inline constexpr int kNumCounters = 16;
inline constexpr int kNumSavedRooms = 16;
inline constexpr int kLampItem = 9;
inline constexpr int kMaxCounterOperand = 32767;

// Hard-wired vocabulary positions of the built-in commands.
inline constexpr int kVerbGo = 1;
inline constexpr int kVerbGet = 10;
inline constexpr int kVerbDrop = 18;

struct DecodedCondition {
  int opcode = 0;
  int param = 0;
  bool operator==(const DecodedCondition&) const = default;
};

struct DecodedActionWord {
  int first = 0;
  int second = 0;
  bool operator==(const DecodedActionWord&) const = default;
};

struct AutoTrigger {
  int chance = 0;  // percent; 0 fires only as a continuation
  bool operator==(const AutoTrigger&) const = default;
};

struct CommandTrigger {
  int verb = 0;
  int noun = 0;
  bool noun_wildcard = false;
  bool operator==(const CommandTrigger&) const = default;
};

using Trigger = std::variant<AutoTrigger, CommandTrigger>;

DecodedCondition decode_condition(int raw);
DecodedActionWord decode_action_word(int raw);
Trigger decode_vocab(int raw);

/// Valid condition opcode (0..19)?
bool is_condition_opcode(int opcode);
/// Effect kind for a raw act value, or nullopt for the unassigned 90..101.
std::optional<EffectOp> effect_op_for(int act);
/// Message index printed by a raw act value (1..51 -> n, >= 102 -> n - 50).
int message_for_act(int act);
/// Inverse of message_for_act.
int act_for_message(int message);
/// Operand kinds consumed by an effect, in binding order.
std::vector<OperandKind> operand_kinds(EffectOp op);
/// Operand kind of a condition parameter, or nullopt when it is unchecked.
std::optional<OperandKind> condition_param_kind(ConditionOp op);

const char* condition_name(ConditionOp op);
const char* effect_name(EffectOp op);

struct Condition {
  ConditionOp op = ConditionOp::kParam;
  int param = 0;
  bool operator==(const Condition&) const = default;
};

struct Effect {
  EffectOp op = EffectOp::kNop;
  int act = 0;      // raw act value
  int message = 0;  // kMessage only
  std::vector<int> operands;
  int ending_site = -1;  // index into SpecializedGame::ending_catalog
  bool operator==(const Effect&) const = default;
};

struct ScriptLine {
  int line_index = 0;
  int vocab = 0;  // raw, kept because continuation runs only vocab==0 lines
  Trigger trigger;
  std::vector<Condition> conditions;
  std::vector<Effect> effects;        // always four, no-ops included
  std::vector<int> unused_operands;   // queued params no effect reads
  std::vector<std::string> ending_sites;

  bool is_auto() const { return std::holds_alternative<AutoTrigger>(trigger); }
  bool has_continuation() const;
  bool operator==(const ScriptLine&) const = default;
};

enum class EndingKind : std::uint8_t { kGameOver, kScore, kDarkFall };

struct EndingSite {
  int line_index = -1;        // -1 for the built-in fall in the dark
  int effect_position = -1;
  EndingKind kind = EndingKind::kGameOver;
  std::string label;
};

/// Line index used for the built-in dark-fall ending in goal filters.
inline constexpr int kBuiltinLine = -1;

/// Lowering problem; the whole line is rejected.
class LoweringError : public Error {
 public:
  LoweringError(int line_index, const std::string& message);
  int line_index() const { return line_index_; }

 private:
  int line_index_;
};

/// Lowers one raw line. Ending labels are filled in; `ending_site` indices are
/// assigned later by specialize_game.
ScriptLine lower_line(const db::RawAction& raw, int line_index);

struct MatchTable {
  std::vector<std::vector<int>> candidates;  // per noun index, ascending item index

  const std::vector<int>& for_noun(int noun) const;
};

MatchTable build_match_table(const db::GameDatabase& db);

struct Constants {
  int num_items = 0;
  int num_actions = 0;
  int num_words = 0;
  int num_rooms = 0;
  int max_carry = 0;
  int player_room = 0;
  int num_treasures = 0;
  int word_length = 3;
  int light_time = -1;
  int num_messages = 0;
  int treasure_room = 0;
  int carried = 0;     // internal CARRIED location: num_rooms + 1
  int lamp_item = -1;  // kLampItem when the game has that many items
};

struct SpecializedGame {
  db::GameDatabase db;
  Constants constants;
  std::vector<ScriptLine> lines;
  MatchTable match_table;
  int auto_rng_slots = 0;
  std::vector<EndingSite> ending_catalog;
  std::vector<int> initial_locations;  // internal encoding
  std::vector<bool> treasures;

  /// Maps a location stored in the file (255 = carried) to the internal one.
  int internal_location(int external) const;
  int external_location(int internal) const;
  int dark_fall_site() const { return static_cast<int>(ending_catalog.size()) - 1; }
};

/// Thrown when the database fails validation or a line fails to lower.
class SpecializeError : public Error {
 public:
  explicit SpecializeError(std::vector<db::Diagnostic> diagnostics);
  const std::vector<db::Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<db::Diagnostic> diagnostics_;
};

SpecializedGame specialize_game(const db::GameDatabase& db);

/// Removes "."-described items, rooms and messages, compacts indices and drops
/// every action line that referred to a removed entity.
db::GameDatabase prune_placeholders(const db::GameDatabase& db);

/// One line per ScriptLine: trigger, conditions, effects, ending labels.
std::string dump_text(const SpecializedGame& game);
/// Nested `key { ... }` / `key value` tree for golden tests and tooling.
std::string dump_tree(const SpecializedGame& game);

}  // namespace saga::specialize
