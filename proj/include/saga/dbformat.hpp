#pragma once

// Game database model and the whitespace-separated .dat text format used by
// classic SAGA adventures.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saga/error.hpp"

namespace saga::db {

/// Item location value meaning "in the player's inventory", as stored in files.
inline constexpr int kCarriedExternal = 255;
inline constexpr int kNumDirections = 6;

struct GameHeader {
  int reserved = 0;  // first integer of the file; preserved, never read
  int num_items = 0;
  int num_actions = 0;
  int num_words = 0;
  int num_rooms = 0;
  int max_carry = 0;
  int player_room = 0;
  int num_treasures = 0;
  int word_length = 3;
  int light_time = -1;  // -1: the light source never runs out
  int num_messages = 0;
  int treasure_room = 0;

  bool operator==(const GameHeader&) const = default;
};

/// One scripted event exactly as packed in the file.
struct RawAction {
  int vocab = 0;                       // 150 * verb + noun
  std::array<int, 5> conditions{};     // 20 * param + opcode
  std::array<int, 2> actions{};        // 150 * act_a + act_b

  bool operator==(const RawAction&) const = default;
};

struct Room {
  std::array<int, kNumDirections> exits{};  // N S E W U D; 0 = no exit
  std::string description;

  bool operator==(const Room&) const = default;
};

struct Item {
  std::string description;
  int initial_location = 0;  // room, kCarriedExternal, or 0 (not in play)
  std::optional<std::string> auto_get;

  bool is_treasure() const { return !description.empty() && description.front() == '*'; }
  bool operator==(const Item&) const = default;
};

struct GameDatabase {
  GameHeader header;
  std::vector<RawAction> actions;
  std::vector<std::string> verbs;
  std::vector<std::string> nouns;
  std::vector<Room> rooms;
  std::vector<std::string> messages;
  std::vector<Item> items;
  std::vector<std::string> action_titles;
  std::array<int, 3> trailer{};  // version, adventure number, checksum

  bool operator==(const GameDatabase&) const = default;
};

/// A problem found while reading or checking a database. `offset` is a byte
/// offset into the source text when one is known.
struct Diagnostic {
  std::optional<std::size_t> offset;
  std::string field;
  std::string message;

  /// "offset:field:message", with "-" standing in for an unknown offset.
  std::string render() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic diagnostic);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

GameDatabase parse_database(std::string_view text);
GameDatabase load_database(const std::filesystem::path& path);

std::string serialize_database(const GameDatabase& db);

/// Empty iff every structural invariant holds and every index referenced by a
/// room exit, item location or decoded condition/effect is in range.
std::vector<Diagnostic> validate(const GameDatabase& db);

/// Returns the head word for `index` in a verb or noun list: a word starting
/// with '*' is a synonym of the nearest preceding non-synonym.
std::size_t head_word_index(const std::vector<std::string>& words, std::size_t index);

/// Word text with any leading synonym marker removed.
std::string_view bare_word(std::string_view word);

/// strncasecmp(a, b, n) == 0 with C-string semantics (stops at the shorter).
bool words_match(std::string_view a, std::string_view b, int significant);

}  // namespace saga::db
