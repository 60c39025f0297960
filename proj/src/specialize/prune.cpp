#include "saga/specialize.hpp"

namespace saga::specialize {

namespace {

constexpr const char* kPlaceholder = ".";

// old index -> new index, or -1 when removed
std::vector<int> compaction(const std::vector<bool>& removed) {
  std::vector<int> map(removed.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < removed.size(); ++i)
    if (!removed[i]) map[i] = next++;
  return map;
}

struct Remap {
  std::vector<int> items, rooms, messages;

  bool keeps(OperandKind kind, int v) const {
    switch (kind) {
      case OperandKind::kItem: return items[static_cast<std::size_t>(v)] >= 0;
      case OperandKind::kRoom: return rooms[static_cast<std::size_t>(v)] >= 0;
      case OperandKind::kRoomOrCarried:
        return v == db::kCarriedExternal || rooms[static_cast<std::size_t>(v)] >= 0;
      default: return true;
    }
  }

  int apply(OperandKind kind, int v) const {
    switch (kind) {
      case OperandKind::kItem: return items[static_cast<std::size_t>(v)];
      case OperandKind::kRoom: return rooms[static_cast<std::size_t>(v)];
      case OperandKind::kRoomOrCarried:
        return v == db::kCarriedExternal ? v : rooms[static_cast<std::size_t>(v)];
      default: return v;
    }
  }
};

// Rewrites one valid line under `remap`, or returns nullopt when it refers to
// something removed.
std::optional<db::RawAction> rewrite(const db::RawAction& raw, const Remap& remap) {
  const ScriptLine line = lower_line(raw, 0);

  // Kinds of the queued params, in queue order, as the effects consume them.
  std::vector<std::optional<OperandKind>> queue_kinds;
  for (const Effect& e : line.effects)
    for (OperandKind k : operand_kinds(e.op)) queue_kinds.push_back(k);

  db::RawAction out = raw;
  std::size_t queued = 0;
  for (int& packed : out.conditions) {
    const DecodedCondition c = decode_condition(packed);
    std::optional<OperandKind> kind;
    if (c.opcode == 0) {
      if (queued < queue_kinds.size()) kind = queue_kinds[queued];
      ++queued;
    } else {
      kind = condition_param_kind(static_cast<ConditionOp>(c.opcode));
    }
    if (!kind) continue;
    if (!remap.keeps(*kind, c.param)) return std::nullopt;
    packed = 20 * remap.apply(*kind, c.param) + c.opcode;
  }

  for (int& word : out.actions) {
    DecodedActionWord w = decode_action_word(word);
    for (int* act : {&w.first, &w.second}) {
      if (effect_op_for(*act) != EffectOp::kMessage) continue;
      const int m = remap.messages[static_cast<std::size_t>(message_for_act(*act))];
      if (m < 0) return std::nullopt;
      *act = act_for_message(m);
    }
    word = 150 * w.first + w.second;
  }
  return out;
}

}  // namespace

db::GameDatabase prune_placeholders(const db::GameDatabase& db) {
  const db::GameHeader& h = db.header;
  // Items up to the lamp keep their slot so the lamp index stays fixed; item 0
  // always stays because the format needs at least one item entry.
  const int first_removable_item = h.num_items >= kLampItem ? kLampItem + 1 : 1;

  std::vector<bool> drop_items(db.items.size()), drop_rooms(db.rooms.size()), drop_messages(db.messages.size());
  for (std::size_t i = 0; i < db.items.size(); ++i)
    drop_items[i] = static_cast<int>(i) >= first_removable_item && db.items[i].description == kPlaceholder;
  for (std::size_t r = 1; r < db.rooms.size(); ++r)
    drop_rooms[r] = db.rooms[r].description == kPlaceholder && static_cast<int>(r) != h.player_room &&
                    static_cast<int>(r) != h.treasure_room;
  for (std::size_t m = 1; m < db.messages.size(); ++m) drop_messages[m] = db.messages[m] == kPlaceholder;

  Remap remap{compaction(drop_items), compaction(drop_rooms), compaction(drop_messages)};

  db::GameDatabase out;
  out.header = h;
  out.verbs = db.verbs;
  out.nouns = db.nouns;
  out.trailer = db.trailer;

  for (std::size_t i = 0; i < db.actions.size(); ++i) {
    if (auto rewritten = rewrite(db.actions[i], remap)) {
      out.actions.push_back(*rewritten);
      out.action_titles.push_back(i < db.action_titles.size() ? db.action_titles[i] : std::string());
    }
  }
  if (out.actions.empty()) {
    out.actions.emplace_back();
    out.action_titles.emplace_back();
  }

  for (std::size_t r = 0; r < db.rooms.size(); ++r) {
    if (drop_rooms[r]) continue;
    db::Room room = db.rooms[r];
    for (int& exit : room.exits) exit = std::max(remap.rooms[static_cast<std::size_t>(exit)], 0);
    out.rooms.push_back(std::move(room));
  }
  for (std::size_t m = 0; m < db.messages.size(); ++m)
    if (!drop_messages[m]) out.messages.push_back(db.messages[m]);
  for (std::size_t i = 0; i < db.items.size(); ++i) {
    if (drop_items[i]) continue;
    db::Item item = db.items[i];
    if (item.initial_location != db::kCarriedExternal)
      item.initial_location = std::max(remap.rooms[static_cast<std::size_t>(item.initial_location)], 0);
    out.items.push_back(std::move(item));
  }

  out.header.num_actions = static_cast<int>(out.actions.size()) - 1;
  out.header.num_rooms = static_cast<int>(out.rooms.size()) - 1;
  out.header.num_messages = static_cast<int>(out.messages.size()) - 1;
  out.header.num_items = static_cast<int>(out.items.size()) - 1;
  out.header.player_room = remap.rooms[static_cast<std::size_t>(h.player_room)];
  out.header.treasure_room = remap.rooms[static_cast<std::size_t>(h.treasure_room)];
  return out;
}

}  // namespace saga::specialize
