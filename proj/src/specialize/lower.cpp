#include <algorithm>
#include <deque>

#include "saga/specialize.hpp"

namespace saga::specialize {

LoweringError::LoweringError(int line_index, const std::string& message)
    : Error("action line " + std::to_string(line_index) + ": " + message), line_index_(line_index) {}

SpecializeError::SpecializeError(std::vector<db::Diagnostic> diagnostics)
    : Error([&] {
        std::string what = "game database rejected";
        for (const auto& d : diagnostics) what += "\n" + d.render();
        return what;
      }()),
      diagnostics_(std::move(diagnostics)) {}

bool ScriptLine::has_continuation() const {
  return std::any_of(effects.begin(), effects.end(),
                     [](const Effect& e) { return e.op == EffectOp::kContinue; });
}

const std::vector<int>& MatchTable::for_noun(int noun) const {
  static const std::vector<int> kNone;
  if (noun < 0 || noun >= static_cast<int>(candidates.size())) return kNone;
  return candidates[static_cast<std::size_t>(noun)];
}

ScriptLine lower_line(const db::RawAction& raw, int line_index) {
  ScriptLine line;
  line.line_index = line_index;
  line.vocab = raw.vocab;
  if (raw.vocab < 0) throw LoweringError(line_index, "negative vocab");
  line.trigger = decode_vocab(raw.vocab);

  std::deque<int> queue;
  for (int packed : raw.conditions) {
    if (packed < 0) throw LoweringError(line_index, "negative condition");
    const DecodedCondition c = decode_condition(packed);
    if (c.opcode == 0)
      queue.push_back(c.param);
    else
      line.conditions.push_back({static_cast<ConditionOp>(c.opcode), c.param});
  }

  std::array<int, 4> acts{};
  for (std::size_t w = 0; w < raw.actions.size(); ++w) {
    if (raw.actions[w] < 0) throw LoweringError(line_index, "negative action word");
    const DecodedActionWord word = decode_action_word(raw.actions[w]);
    acts[2 * w] = word.first;
    acts[2 * w + 1] = word.second;
  }

  for (std::size_t pos = 0; pos < acts.size(); ++pos) {
    const int act = acts[pos];
    const std::optional<EffectOp> op = effect_op_for(act);
    if (!op) throw LoweringError(line_index, "unknown effect opcode " + std::to_string(act));
    Effect effect;
    effect.op = *op;
    effect.act = act;
    if (*op == EffectOp::kMessage) effect.message = message_for_act(act);
    for (std::size_t k = 0; k < operand_kinds(*op).size(); ++k) {
      if (queue.empty())
        throw LoweringError(line_index, "effect " + std::to_string(pos) + " (" + effect_name(*op) +
                                            ") needs more parameters than the conditions provide");
      effect.operands.push_back(queue.front());
      queue.pop_front();
    }
    if (*op == EffectOp::kGameOver || *op == EffectOp::kScore) {
      line.ending_sites.push_back("L" + std::to_string(line_index) + ".E" + std::to_string(pos) +
                                  (*op == EffectOp::kGameOver ? ".game_over" : ".score"));
    }
    line.effects.push_back(std::move(effect));
  }
  line.unused_operands.assign(queue.begin(), queue.end());
  return line;
}

MatchTable build_match_table(const db::GameDatabase& db) {
  MatchTable table;
  table.candidates.resize(db.nouns.size());
  for (std::size_t n = 1; n < db.nouns.size(); ++n) {
    const std::string_view word = db::bare_word(db.nouns[db::head_word_index(db.nouns, n)]);
    if (word.empty()) continue;
    for (std::size_t i = 0; i < db.items.size(); ++i) {
      const auto& auto_get = db.items[i].auto_get;
      if (auto_get && !auto_get->empty() && db::words_match(*auto_get, word, db.header.word_length))
        table.candidates[n].push_back(static_cast<int>(i));
    }
  }
  return table;
}

int SpecializedGame::internal_location(int external) const {
  return external == db::kCarriedExternal ? constants.carried : external;
}

int SpecializedGame::external_location(int internal) const {
  return internal == constants.carried ? db::kCarriedExternal : internal;
}

SpecializedGame specialize_game(const db::GameDatabase& db) {
  std::vector<db::Diagnostic> problems = db::validate(db);
  if (!problems.empty()) throw SpecializeError(std::move(problems));

  SpecializedGame game;
  game.db = db;
  const db::GameHeader& h = db.header;
  Constants& k = game.constants;
  k.num_items = h.num_items;
  k.num_actions = h.num_actions;
  k.num_words = h.num_words;
  k.num_rooms = h.num_rooms;
  k.max_carry = h.max_carry;
  k.player_room = h.player_room;
  k.num_treasures = h.num_treasures;
  k.word_length = h.word_length;
  k.light_time = h.light_time;
  k.num_messages = h.num_messages;
  k.treasure_room = h.treasure_room;
  k.carried = h.num_rooms + 1;
  k.lamp_item = h.num_items >= kLampItem ? kLampItem : -1;

  for (std::size_t i = 0; i < db.actions.size(); ++i) {
    try {
      game.lines.push_back(lower_line(db.actions[i], static_cast<int>(i)));
    } catch (const LoweringError& e) {
      problems.push_back({std::nullopt, "actions[" + std::to_string(i) + "]", e.what()});
    }
  }
  if (!problems.empty()) throw SpecializeError(std::move(problems));

  for (ScriptLine& line : game.lines) {
    if (const auto* a = std::get_if<AutoTrigger>(&line.trigger); a && a->chance > 0 && a->chance < 100)
      ++game.auto_rng_slots;
    for (std::size_t pos = 0; pos < line.effects.size(); ++pos) {
      Effect& e = line.effects[pos];
      if (e.op != EffectOp::kGameOver && e.op != EffectOp::kScore) continue;
      e.ending_site = static_cast<int>(game.ending_catalog.size());
      game.ending_catalog.push_back(
          {line.line_index, static_cast<int>(pos),
           e.op == EffectOp::kGameOver ? EndingKind::kGameOver : EndingKind::kScore,
           "L" + std::to_string(line.line_index) + ".E" + std::to_string(pos) +
               (e.op == EffectOp::kGameOver ? ".game_over" : ".score")});
    }
  }
  game.ending_catalog.push_back({kBuiltinLine, -1, EndingKind::kDarkFall, "builtin.dark_fall"});

  game.match_table = build_match_table(db);
  for (const db::Item& item : db.items) {
    game.initial_locations.push_back(game.internal_location(item.initial_location));
    game.treasures.push_back(item.is_treasure());
  }
  return game;
}

}  // namespace saga::specialize
