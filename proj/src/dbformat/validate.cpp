#include <deque>

#include "saga/dbformat.hpp"
#include "saga/specialize.hpp"

namespace saga::db {

namespace {

using specialize::OperandKind;

const char* const kDirectionNames[kNumDirections] = {"north", "south", "east", "west", "up", "down"};

class Checker {
 public:
  explicit Checker(const GameDatabase& db) : db_(db), h_(db.header) {}

  std::vector<Diagnostic> run() {
    header();
    lengths();
    if (!out_.empty()) return std::move(out_);
    rooms();
    items();
    strings();
    for (std::size_t i = 0; i < db_.actions.size(); ++i) action(i);
    return std::move(out_);
  }

 private:
  void add(std::string field, std::string message) {
    out_.push_back({std::nullopt, std::move(field), std::move(message)});
  }

  void header() {
    const std::pair<const char*, int> counts[] = {
        {"num_items", h_.num_items},     {"num_actions", h_.num_actions},
        {"num_words", h_.num_words},     {"num_rooms", h_.num_rooms},
        {"max_carry", h_.max_carry},     {"num_treasures", h_.num_treasures},
        {"num_messages", h_.num_messages}};
    for (const auto& [name, value] : counts)
      if (value < 0) add(std::string("header.") + name, "count must be >= 0");
    if (h_.num_rooms >= kCarriedExternal - 1)
      add("header.num_rooms", "at most " + std::to_string(kCarriedExternal - 2) + " rooms supported");
    if (h_.player_room < 0 || h_.player_room > h_.num_rooms)
      add("header.player_room", "room index out of range");
    if (h_.treasure_room < 0 || h_.treasure_room > h_.num_rooms)
      add("header.treasure_room", "room index out of range");
    if (h_.word_length < 1) add("header.word_length", "must be >= 1");
    if (h_.light_time < -1) add("header.light_time", "negative light time other than -1");
  }

  void lengths() {
    auto expect = [&](const char* name, std::size_t actual, int count) {
      if (count < 0 || actual != static_cast<std::size_t>(count) + 1)
        add(name, "expected " + std::to_string(count + 1) + " entries, found " + std::to_string(actual));
    };
    expect("actions", db_.actions.size(), h_.num_actions);
    expect("action_titles", db_.action_titles.size(), h_.num_actions);
    expect("verbs", db_.verbs.size(), h_.num_words);
    expect("nouns", db_.nouns.size(), h_.num_words);
    expect("rooms", db_.rooms.size(), h_.num_rooms);
    expect("messages", db_.messages.size(), h_.num_messages);
    expect("items", db_.items.size(), h_.num_items);
  }

  void rooms() {
    for (std::size_t r = 0; r < db_.rooms.size(); ++r) {
      for (int d = 0; d < kNumDirections; ++d) {
        const int exit = db_.rooms[r].exits[static_cast<std::size_t>(d)];
        if (exit < 0 || exit > h_.num_rooms)
          add("rooms[" + std::to_string(r) + "].exits." + kDirectionNames[d],
              "exit leads to room " + std::to_string(exit) + " (max " + std::to_string(h_.num_rooms) + ")");
      }
    }
  }

  void items() {
    for (std::size_t i = 0; i < db_.items.size(); ++i) {
      const int loc = db_.items[i].initial_location;
      if (loc != kCarriedExternal && (loc < 0 || loc > h_.num_rooms))
        add("items[" + std::to_string(i) + "].location", "location " + std::to_string(loc) + " out of range");
    }
  }

  void strings() {
    auto check = [&](const std::string& field, const std::string& s) {
      if (s.find('"') != std::string::npos) add(field, "text contains a quote character");
    };
    for (std::size_t i = 0; i < db_.verbs.size(); ++i) check("verbs[" + std::to_string(i) + "]", db_.verbs[i]);
    for (std::size_t i = 0; i < db_.nouns.size(); ++i) check("nouns[" + std::to_string(i) + "]", db_.nouns[i]);
    for (std::size_t i = 0; i < db_.rooms.size(); ++i)
      check("rooms[" + std::to_string(i) + "].description", db_.rooms[i].description);
    for (std::size_t i = 0; i < db_.messages.size(); ++i)
      check("messages[" + std::to_string(i) + "]", db_.messages[i]);
    for (std::size_t i = 0; i < db_.items.size(); ++i) {
      check("items[" + std::to_string(i) + "].description", db_.items[i].description);
      if (db_.items[i].auto_get) check("items[" + std::to_string(i) + "].auto_get", *db_.items[i].auto_get);
    }
    for (std::size_t i = 0; i < db_.action_titles.size(); ++i)
      check("action_titles[" + std::to_string(i) + "]", db_.action_titles[i]);
  }

  // Empty string when `value` is a valid reference of the given kind.
  std::string range_problem(OperandKind kind, int value) const {
    auto bad = [&](const char* what, int max) {
      return what + std::to_string(value) + " (max " + std::to_string(max) + ")";
    };
    switch (kind) {
      case OperandKind::kItem:
        if (value < 0 || value > h_.num_items) return bad("item ", h_.num_items);
        break;
      case OperandKind::kRoom:
        if (value < 0 || value > h_.num_rooms) return bad("room ", h_.num_rooms);
        break;
      case OperandKind::kRoomOrCarried:
        if (value != kCarriedExternal && (value < 0 || value > h_.num_rooms)) return bad("room ", h_.num_rooms);
        break;
      case OperandKind::kFlag:
        if (value < 0 || value >= specialize::kNumFlags) return bad("flag ", specialize::kNumFlags - 1);
        break;
      case OperandKind::kCounterValue:
        if (value < 0 || value > specialize::kMaxCounterOperand)
          return bad("counter operand ", specialize::kMaxCounterOperand);
        break;
      case OperandKind::kCounterSlot:
        if (value < 0 || value >= specialize::kNumCounters) return bad("counter ", specialize::kNumCounters - 1);
        break;
      case OperandKind::kSavedRoomSlot:
        if (value < 0 || value >= specialize::kNumSavedRooms)
          return bad("saved room slot ", specialize::kNumSavedRooms - 1);
        break;
    }
    return {};
  }

  void action(std::size_t index) {
    const RawAction& a = db_.actions[index];
    const std::string base = "actions[" + std::to_string(index) + "]";
    if (a.vocab < 0) {
      add(base + ".vocab", "negative vocab");
      return;
    }
    const int verb = a.vocab / 150;
    const int noun = a.vocab % 150;
    if (verb > h_.num_words) add(base + ".vocab", "verb " + std::to_string(verb) + " out of range");
    if (verb != 0 && noun > h_.num_words) add(base + ".vocab", "noun " + std::to_string(noun) + " out of range");

    std::deque<int> queue;
    for (std::size_t c = 0; c < a.conditions.size(); ++c) {
      const std::string field = base + ".conditions[" + std::to_string(c) + "]";
      if (a.conditions[c] < 0) {
        add(field, "negative condition");
        continue;
      }
      const auto [opcode, param] = specialize::decode_condition(a.conditions[c]);
      if (opcode == 0) {
        queue.push_back(param);
        continue;
      }
      const auto kind = specialize::condition_param_kind(static_cast<specialize::ConditionOp>(opcode));
      if (!kind) continue;
      if (std::string p = range_problem(*kind, param); !p.empty())
        add(field, std::string("condition ") + specialize::condition_name(static_cast<specialize::ConditionOp>(opcode)) +
                       " references " + p);
    }

    for (std::size_t w = 0; w < a.actions.size(); ++w) {
      if (a.actions[w] < 0) {
        add(base + ".actions[" + std::to_string(w) + "]", "negative action word");
        return;
      }
      const auto word = specialize::decode_action_word(a.actions[w]);
      for (int act : {word.first, word.second}) {
        const std::string field = base + ".actions[" + std::to_string(w) + "]";
        const auto op = specialize::effect_op_for(act);
        if (!op) {
          add(field, "unknown effect opcode " + std::to_string(act));
          continue;
        }
        if (*op == specialize::EffectOp::kMessage) {
          const int m = specialize::message_for_act(act);
          if (m > h_.num_messages)
            add(field, "message " + std::to_string(m) + " out of range (max " + std::to_string(h_.num_messages) + ")");
          continue;
        }
        if (*op == specialize::EffectOp::kRefillLamp && h_.num_items < specialize::kLampItem)
          add(field, "refill_lamp used but the game has no lamp item");
        for (OperandKind kind : specialize::operand_kinds(*op)) {
          if (queue.empty()) {
            add(field, std::string("effect ") + specialize::effect_name(*op) +
                           " needs more parameters than the conditions provide");
            break;
          }
          const int value = queue.front();
          queue.pop_front();
          if (std::string p = range_problem(kind, value); !p.empty())
            add(field, std::string("effect ") + specialize::effect_name(*op) + " references " + p);
        }
      }
    }
  }

  const GameDatabase& db_;
  const GameHeader& h_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const GameDatabase& db) { return Checker(db).run(); }

}  // namespace saga::db
