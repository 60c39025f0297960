#include <sstream>

#include "saga/specialize.hpp"

namespace saga::specialize {

namespace {

std::string word_at(const std::vector<std::string>& words, int index) {
  if (index < 0 || index >= static_cast<int>(words.size())) return "?";
  return std::string(db::bare_word(words[static_cast<std::size_t>(index)]));
}

std::string join_ints(const std::vector<int>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
  return out;
}

const char* kind_name(EndingKind kind) {
  switch (kind) {
    case EndingKind::kGameOver: return "game_over";
    case EndingKind::kScore: return "score";
    case EndingKind::kDarkFall: return "dark_fall";
  }
  return "?";
}

class Tree {
 public:
  void open(const std::string& key) {
    line(key + " {");
    ++depth_;
  }
  void close() {
    --depth_;
    line("}");
  }
  template <typename T>
  void kv(const std::string& key, const T& value) {
    std::ostringstream s;
    s << key << ' ' << value;
    line(s.str());
  }
  std::string str() const { return out_.str(); }

 private:
  void line(const std::string& text) { out_ << std::string(2 * static_cast<std::size_t>(depth_), ' ') << text << '\n'; }
  std::ostringstream out_;
  int depth_ = 0;
};

}  // namespace

std::string dump_text(const SpecializedGame& game) {
  const Constants& k = game.constants;
  std::ostringstream out;
  out << "# items=" << k.num_items + 1 << " rooms=" << k.num_rooms + 1 << " actions=" << k.num_actions + 1
      << " words=" << k.num_words + 1 << " rng_slots=" << game.auto_rng_slots << '\n';
  for (const EndingSite& site : game.ending_catalog)
    out << "# ending " << site.label << '\n';

  for (const ScriptLine& line : game.lines) {
    out << 'L' << line.line_index << ' ';
    if (const auto* a = std::get_if<AutoTrigger>(&line.trigger)) {
      out << "auto " << a->chance << '%';
    } else {
      const auto& c = std::get<CommandTrigger>(line.trigger);
      out << "cmd " << c.verb << ':' << word_at(game.db.verbs, c.verb) << ' ';
      if (c.noun_wildcard)
        out << '*';
      else
        out << c.noun << ':' << word_at(game.db.nouns, c.noun);
    }
    out << " ; if";
    if (line.conditions.empty()) out << " always";
    for (std::size_t i = 0; i < line.conditions.size(); ++i) {
      const Condition& c = line.conditions[i];
      out << (i ? ", " : " ") << condition_name(c.op);
      if (condition_param_kind(c.op) || c.op == ConditionOp::kCounterLe || c.op == ConditionOp::kCounterGt ||
          c.op == ConditionOp::kCounterEq)
        out << '(' << c.param << ')';
    }
    out << " ; do";
    bool any = false;
    for (const Effect& e : line.effects) {
      if (e.op == EffectOp::kNop) continue;
      out << (any ? ", " : " ") << effect_name(e.op);
      if (e.op == EffectOp::kMessage)
        out << '(' << e.message << ')';
      else if (!e.operands.empty())
        out << '(' << join_ints(e.operands, ",") << ')';
      any = true;
    }
    if (!any) out << " nothing";
    out << " ; endings ";
    if (line.ending_sites.empty()) out << '-';
    for (std::size_t i = 0; i < line.ending_sites.size(); ++i) out << (i ? "," : "") << line.ending_sites[i];
    out << '\n';
  }
  return out.str();
}

std::string dump_tree(const SpecializedGame& game) {
  const Constants& k = game.constants;
  Tree t;
  t.open("game");
  t.open("constants");
  t.kv("num_items", k.num_items);
  t.kv("num_actions", k.num_actions);
  t.kv("num_words", k.num_words);
  t.kv("num_rooms", k.num_rooms);
  t.kv("max_carry", k.max_carry);
  t.kv("player_room", k.player_room);
  t.kv("num_treasures", k.num_treasures);
  t.kv("word_length", k.word_length);
  t.kv("light_time", k.light_time);
  t.kv("treasure_room", k.treasure_room);
  t.kv("carried", k.carried);
  t.kv("lamp_item", k.lamp_item);
  t.close();
  t.kv("rng_slots", game.auto_rng_slots);

  t.open("endings");
  for (std::size_t s = 0; s < game.ending_catalog.size(); ++s) {
    const EndingSite& site = game.ending_catalog[s];
    t.open("site " + std::to_string(s));
    t.kv("line", site.line_index);
    t.kv("effect", site.effect_position);
    t.kv("kind", kind_name(site.kind));
    t.kv("label", site.label);
    t.close();
  }
  t.close();

  t.open("match_table");
  for (std::size_t n = 0; n < game.match_table.candidates.size(); ++n) {
    const auto& items = game.match_table.candidates[n];
    if (items.empty()) continue;
    t.kv("noun " + std::to_string(n), join_ints(items, " "));
  }
  t.close();

  t.open("lines");
  for (const ScriptLine& line : game.lines) {
    t.open("line " + std::to_string(line.line_index));
    t.open("trigger");
    if (const auto* a = std::get_if<AutoTrigger>(&line.trigger)) {
      t.kv("kind", "auto");
      t.kv("chance", a->chance);
    } else {
      const auto& c = std::get<CommandTrigger>(line.trigger);
      t.kv("kind", "command");
      t.kv("verb", c.verb);
      t.kv("noun", c.noun);
      t.kv("wildcard", c.noun_wildcard ? "true" : "false");
    }
    t.close();
    for (const Condition& c : line.conditions) {
      t.open("condition");
      t.kv("op", condition_name(c.op));
      t.kv("param", c.param);
      t.close();
    }
    for (std::size_t pos = 0; pos < line.effects.size(); ++pos) {
      const Effect& e = line.effects[pos];
      t.open("effect " + std::to_string(pos));
      t.kv("op", effect_name(e.op));
      t.kv("act", e.act);
      if (e.op == EffectOp::kMessage) t.kv("message", e.message);
      if (!e.operands.empty()) t.kv("operands", join_ints(e.operands, " "));
      if (e.ending_site >= 0) t.kv("ending", game.ending_catalog[static_cast<std::size_t>(e.ending_site)].label);
      t.close();
    }
    if (!line.unused_operands.empty()) t.kv("unused_operands", join_ints(line.unused_operands, " "));
    t.close();
  }
  t.close();
  t.close();
  return t.str();
}

}  // namespace saga::specialize
