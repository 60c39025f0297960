#include "saga/bmc.hpp"

namespace saga::bmc {

using sat::kFalse;
using sat::kTrue;
using specialize::ConditionOp;
using specialize::EffectOp;
using specialize::ScriptLine;

namespace {

// Symbolic counterpart of one engine turn. Every write is a guarded update
// x := ite(guard, value, x) on the working copy of the state.
class StepEncoder {
 public:
  StepEncoder(Builder& b, const SpecializedGame& game, const StateLayout& layout, const SymState& pre,
              const StepInputs& in)
      : b_(b), game_(game), k_(game.constants), layout_(layout), cur_(pre), in_(in) {}

  SymState run() {
    command_phase();
    lamp_tick();
    automatics();
    return cur_;
  }

 private:
  // ---- state access ---------------------------------------------------------------

  Word field(int offset, int width) const {
    return Word(cur_.bits.begin() + offset, cur_.bits.begin() + offset + width);
  }

  void assign(int offset, Lit guard, const Word& value) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      Lit& bit = cur_.bits[static_cast<std::size_t>(offset) + i];
      bit = b_.ite(guard, value[i], bit);
    }
  }

  int bpl() const { return layout_.bits_per_location(); }
  Word item(int i) const { return field(layout_.item(i), bpl()); }
  Word room() const { return field(layout_.room(), bpl()); }
  Word cc() const { return field(layout_.current_counter(), 16); }
  Word fuel() const { return field(layout_.lamp(), layout_.lamp_width()); }
  Word ended() const { return field(layout_.ended(), layout_.ended_width()); }
  Lit flag(int n) const { return cur_.bits[static_cast<std::size_t>(layout_.flags() + n)]; }
  Word location(int internal) const { return Builder::constant(internal, bpl()); }

  void set_item(int i, Lit g, const Word& loc) { assign(layout_.item(i), g, loc); }
  void set_flag(int n, Lit g, bool on) { assign(layout_.flags() + n, g, {sat::from_bool(on)}); }
  void set_cc(Lit g, const Word& v) { assign(layout_.current_counter(), g, v); }

  Lit alive() { return b_.eq_const(ended(), 0); }
  Lit carried(int i) { return b_.eq_const(item(i), k_.carried); }
  Lit here(int i) { return b_.eq(item(i), room()); }

  Word carried_count() {
    std::vector<Lit> lits;
    for (std::size_t i = 0; i < game_.initial_locations.size(); ++i) lits.push_back(carried(static_cast<int>(i)));
    return b_.popcount(lits);
  }

  Lit below(const Word& w, int limit) { return limit <= 0 ? kFalse : b_.ule_const(w, static_cast<std::uint64_t>(limit - 1)); }

  Lit lamp_present() {
    if (k_.lamp_item < 0) return kFalse;
    const Word loc = item(k_.lamp_item);
    return b_.and2(-b_.eq_const(loc, 0), b_.or2(b_.eq_const(loc, k_.carried), b_.eq(loc, room())));
  }

  Lit dark() { return b_.and2(flag(specialize::kDarkFlag), -lamp_present()); }

  void end_game(Lit g, int site) { assign(layout_.ended(), g, Builder::constant(site + 1, layout_.ended_width())); }

  // ---- script lines ---------------------------------------------------------------

  Lit condition(const specialize::Condition& c) {
    const int p = c.param;
    switch (c.op) {
      case ConditionOp::kParam: return kTrue;
      case ConditionOp::kCarried: return carried(p);
      case ConditionOp::kHere: return here(p);
      case ConditionOp::kPresent: return b_.or2(carried(p), here(p));
      case ConditionOp::kInRoom: return b_.eq_const(room(), p);
      case ConditionOp::kNotHere: return -here(p);
      case ConditionOp::kNotCarried: return -carried(p);
      case ConditionOp::kNotInRoom: return -b_.eq_const(room(), p);
      case ConditionOp::kFlagSet: return flag(p);
      case ConditionOp::kFlagClear: return -flag(p);
      case ConditionOp::kCarryingAny:
      case ConditionOp::kCarryingNone: {
        std::vector<Lit> any;
        for (std::size_t i = 0; i < game_.initial_locations.size(); ++i) any.push_back(carried(static_cast<int>(i)));
        const Lit some = b_.or_any(any);
        return c.op == ConditionOp::kCarryingAny ? some : -some;
      }
      case ConditionOp::kNotPresent: return b_.and2(-carried(p), -here(p));
      case ConditionOp::kInPlay: return -b_.eq_const(item(p), 0);
      case ConditionOp::kNotInPlay: return b_.eq_const(item(p), 0);
      case ConditionOp::kCounterLe: return b_.sle_const(cc(), p);
      case ConditionOp::kCounterGt: return -b_.sle_const(cc(), p);
      case ConditionOp::kAtInitial:
        return b_.eq_const(item(p), game_.initial_locations[static_cast<std::size_t>(p)]);
      case ConditionOp::kMoved: return -b_.eq_const(item(p), game_.initial_locations[static_cast<std::size_t>(p)]);
      case ConditionOp::kCounterEq: return b_.eq_const_signed(cc(), p);
    }
    return kFalse;
  }

  Lit conditions(const ScriptLine& line) {
    Lit all = kTrue;
    for (const auto& c : line.conditions) {
      all = b_.and2(all, condition(c));
      if (all == kFalse) break;
    }
    return all;
  }

  void swap_fields(Lit g, int a, int c, int width) {
    const Word wa = field(a, width);
    const Word wc = field(c, width);
    assign(a, g, wc);
    assign(c, g, wa);
  }

  void effect(const specialize::Effect& e, Lit g) {
    const auto& o = e.operands;
    switch (e.op) {
      case EffectOp::kGet: set_item(o[0], b_.and2(g, below(carried_count(), k_.max_carry)), location(k_.carried)); break;
      case EffectOp::kDrop: set_item(o[0], g, room()); break;
      case EffectOp::kGoto: assign(layout_.room(), g, location(o[0])); break;
      case EffectOp::kRemove:
      case EffectOp::kRemove2: set_item(o[0], g, location(0)); break;
      case EffectOp::kSetDark: set_flag(specialize::kDarkFlag, g, true); break;
      case EffectOp::kClearDark: set_flag(specialize::kDarkFlag, g, false); break;
      case EffectOp::kSetFlag: set_flag(o[0], g, true); break;
      case EffectOp::kClearFlag: set_flag(o[0], g, false); break;
      case EffectOp::kDie:
        set_flag(specialize::kDarkFlag, g, false);
        assign(layout_.room(), g, location(k_.num_rooms));
        break;
      case EffectOp::kPutItem: set_item(o[0], g, location(game_.internal_location(o[1]))); break;
      case EffectOp::kGameOver: end_game(g, e.ending_site); break;
      case EffectOp::kScore: {
        std::vector<Lit> stored;
        for (std::size_t i = 0; i < game_.treasures.size(); ++i)
          if (game_.treasures[i]) stored.push_back(b_.eq_const(item(static_cast<int>(i)), k_.treasure_room));
        const Lit win = k_.num_treasures <= 0 ? kTrue : -below(b_.popcount(stored), k_.num_treasures);
        end_game(b_.and2(g, win), e.ending_site);
        break;
      }
      case EffectOp::kSetFlag0: set_flag(0, g, true); break;
      case EffectOp::kClearFlag0: set_flag(0, g, false); break;
      case EffectOp::kRefillLamp:
        if (layout_.lamp_width() > 0) assign(layout_.lamp(), g, Builder::constant(k_.light_time, layout_.lamp_width()));
        set_item(k_.lamp_item, g, location(k_.carried));
        break;
      case EffectOp::kSwapItems: swap_fields(g, layout_.item(o[0]), layout_.item(o[1]), bpl()); break;
      case EffectOp::kTake: set_item(o[0], g, location(k_.carried)); break;
      case EffectOp::kPutWith: set_item(o[0], g, item(o[1])); break;
      case EffectOp::kDecCounter: {
        const Word v = cc();
        set_cc(b_.and2(g, -v[15]), b_.sub(v, Builder::constant(1, 16)));
        break;
      }
      case EffectOp::kSetCounter: set_cc(g, Builder::constant(o[0], 16)); break;
      case EffectOp::kSwapRoom: swap_fields(g, layout_.room(), layout_.saved_room(0), bpl()); break;
      case EffectOp::kSelectCounter: swap_fields(g, layout_.current_counter(), layout_.counter(o[0]), 16); break;
      case EffectOp::kAddCounter: set_cc(g, b_.add(cc(), Builder::constant(o[0], 16))); break;
      case EffectOp::kSubCounter: {
        Word wide = cc();
        wide.push_back(wide[15]);
        const Word d = b_.sub(wide, Builder::constant(o[0], 17));
        const Word minus_one = Builder::constant(-1, 17);
        Word r = b_.ite(b_.slt(d, minus_one), minus_one, d);
        r.pop_back();
        set_cc(g, r);
        break;
      }
      case EffectOp::kSwapSavedRoom: swap_fields(g, layout_.room(), layout_.saved_room(o[0]), bpl()); break;
      case EffectOp::kNop:
      case EffectOp::kMessage:
      case EffectOp::kLook:
      case EffectOp::kLook2:
      case EffectOp::kInventory:
      case EffectOp::kClearScreen:
      case EffectOp::kSave:
      case EffectOp::kContinue:
      case EffectOp::kPrintCounter:
      case EffectOp::kPrintNoun:
      case EffectOp::kPrintNounLine:
      case EffectOp::kNewline:
      case EffectOp::kPause:
      case EffectOp::kNop89: break;
    }
  }

  void run_line(const ScriptLine& line, Lit exec) {
    for (const auto& e : line.effects) {
      const Lit g = b_.and2(exec, alive());
      if (g == kFalse) break;
      effect(e, g);
    }
  }

  // ---- turn phases ------------------------------------------------------------------

  void command_phase() {
    Lit fired = kFalse;
    Lit doagain = kFalse;
    Lit halted = kFalse;
    for (const ScriptLine& line : game_.lines) {
      if (line.vocab != 0) doagain = kFalse;
      halted = b_.or2(halted, b_.and2(-doagain, fired));
      Lit candidate = kFalse;
      if (const auto* c = std::get_if<specialize::CommandTrigger>(&line.trigger))
        candidate = b_.and2(b_.eq_const(in_.verb, c->verb), c->noun_wildcard ? kTrue : b_.eq_const(in_.noun, c->noun));
      if (line.vocab == 0) candidate = b_.or2(candidate, doagain);
      const Lit run = b_.and_all({-halted, candidate, alive()});
      if (run == kFalse) continue;
      const Lit exec = b_.and2(run, conditions(line));
      run_line(line, exec);
      fired = b_.or2(fired, exec);
      if (line.has_continuation()) doagain = b_.or2(doagain, exec);
    }
    builtins(b_.and2(alive(), -fired));
  }

  void builtins(Lit g) {
    const auto& rooms = game_.db.rooms;
    const std::size_t width = static_cast<std::size_t>(bpl());

    // GO <direction>
    const Lit go = b_.and2(g, b_.eq_const(in_.verb, specialize::kVerbGo));
    if (go != kFalse) {
      std::vector<Lit> room_is(rooms.size());
      for (std::size_t r = 0; r < rooms.size(); ++r) room_is[r] = b_.eq_const(room(), static_cast<std::int64_t>(r));
      Word exit(width, kFalse);
      Lit direction = kFalse;
      for (int d = 1; d <= db::kNumDirections; ++d) {
        const Lit nd = b_.eq_const(in_.noun, d);
        direction = b_.or2(direction, nd);
        for (std::size_t bit = 0; bit < width; ++bit) {
          std::vector<Lit> rooms_with_bit;
          for (std::size_t r = 0; r < rooms.size(); ++r)
            if ((rooms[r].exits[static_cast<std::size_t>(d - 1)] >> bit) & 1) rooms_with_bit.push_back(room_is[r]);
          exit[bit] = b_.or2(exit[bit], b_.and2(nd, b_.or_any(rooms_with_bit)));
        }
      }
      const Lit go_dir = b_.and2(go, direction);
      const Lit has_exit = b_.or_any(exit);
      const Lit was_dark = dark();
      assign(layout_.room(), b_.and2(go_dir, has_exit), exit);
      end_game(b_.and_all({go_dir, -has_exit, was_dark}), game_.dark_fall_site());
    }

    // GET / DROP <noun> through the lowest-index-wins match table
    const Lit named = -b_.eq_const(in_.noun, 0);
    const Lit get = b_.and_all({g, b_.eq_const(in_.verb, specialize::kVerbGet), named, below(carried_count(), k_.max_carry)});
    const Lit drop = b_.and_all({g, b_.eq_const(in_.verb, specialize::kVerbDrop), named});
    const Word here_loc = room();
    for (std::size_t n = 1; n < game_.match_table.candidates.size(); ++n) {
      const auto& items = game_.match_table.candidates[n];
      if (items.empty()) continue;
      const Lit is_noun = b_.eq_const(in_.noun, static_cast<std::int64_t>(n));
      for (const bool taking : {true, false}) {
        const Lit gn = b_.and2(taking ? get : drop, is_noun);
        if (gn == kFalse) continue;
        Lit earlier = kFalse;
        for (int i : items) {
          const Lit at = taking ? b_.eq(item(i), here_loc) : carried(i);
          set_item(i, b_.and_all({gn, -earlier, at}), taking ? location(k_.carried) : here_loc);
          earlier = b_.or2(earlier, at);
        }
      }
    }
  }

  void lamp_tick() {
    if (layout_.lamp_width() == 0) return;
    const Word f = fuel();
    const Lit g = b_.and_all({alive(), lamp_present(), -b_.eq_const(f, 0)});
    const Word next = b_.sub(f, Builder::constant(1, layout_.lamp_width()));
    assign(layout_.lamp(), g, next);
    set_flag(specialize::kDarkFlag, b_.and2(g, b_.eq_const(next, 0)), true);
  }

  void automatics() {
    Lit doagain = kFalse;
    std::size_t slot = 0;
    for (const ScriptLine& line : game_.lines) {
      if (line.vocab != 0) doagain = kFalse;
      const auto* a = std::get_if<specialize::AutoTrigger>(&line.trigger);
      if (!a) continue;
      Lit draw = kFalse;
      if (a->chance >= 100)
        draw = kTrue;
      else if (a->chance > 0)
        draw = in_.random.at(slot++);
      const Lit run = b_.and2(alive(), b_.or2(draw, doagain));
      if (run == kFalse) continue;
      const Lit exec = b_.and2(run, conditions(line));
      run_line(line, exec);
      if (line.has_continuation()) doagain = b_.or2(doagain, exec);
    }
  }

  Builder& b_;
  const SpecializedGame& game_;
  const specialize::Constants& k_;
  const StateLayout& layout_;
  SymState cur_;
  const StepInputs& in_;
};

}  // namespace

StepEncoding encode_step(Builder& b, const SpecializedGame& game, const StateLayout& layout, int k,
                         const std::vector<bool>* schedule_row) {
  sat::CnfFormula& f = b.formula();
  const std::string suffix = std::to_string(k);
  StepEncoding step;

  const int first = f.fresh_vars(layout.total_bits(), "state_" + suffix);
  for (int i = 0; i < layout.total_bits(); ++i) step.pre.bits.push_back(first + i);

  auto input_word = [&](const std::string& name) {
    const int v = f.fresh_vars(kInputBits, name);
    Word w;
    for (int i = 0; i < kInputBits; ++i) w.push_back(v + i);
    f.add_clause({b.ule_const(w, static_cast<std::uint64_t>(game.constants.num_words))});
    return w;
  };
  step.inputs.verb = input_word("input_verb_" + suffix);
  step.inputs.noun = input_word("input_noun_" + suffix);

  const auto slots = static_cast<std::size_t>(game.auto_rng_slots);
  if (schedule_row) {
    if (schedule_row->size() != slots) throw InternalError("random schedule row has the wrong length");
    for (bool draw : *schedule_row) step.inputs.random.push_back(sat::from_bool(draw));
  } else if (slots > 0) {
    const int v = f.fresh_vars(static_cast<int>(slots), "random_" + suffix);
    for (std::size_t i = 0; i < slots; ++i) step.inputs.random.push_back(v + static_cast<int>(i));
  }

  step.post = StepEncoder(b, game, layout, step.pre, step.inputs).run();

  const Word pre_ended(step.pre.bits.begin() + layout.ended(), step.pre.bits.begin() + layout.ended() + layout.ended_width());
  const Word post_ended(step.post.bits.begin() + layout.ended(),
                        step.post.bits.begin() + layout.ended() + layout.ended_width());
  const Lit was_running = b.eq_const(pre_ended, 0);
  for (std::size_t s = 0; s < game.ending_catalog.size(); ++s)
    step.fired_endings.push_back(b.and2(was_running, b.eq_const(post_ended, static_cast<std::int64_t>(s) + 1)));
  return step;
}

void constrain_state(sat::CnfFormula& f, const SymState& s, const std::vector<bool>& bits) {
  if (bits.size() != s.bits.size()) throw InternalError("state width mismatch");
  for (std::size_t i = 0; i < bits.size(); ++i) f.add_clause({bits[i] ? s.bits[i] : -s.bits[i]});
}

void tie_states(Builder& b, const SymState& a, const SymState& c) {
  if (a.bits.size() != c.bits.size()) throw InternalError("state width mismatch");
  sat::CnfFormula& f = b.formula();
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    f.add_clause({-a.bits[i], c.bits[i]});
    f.add_clause({a.bits[i], -c.bits[i]});
  }
}

std::vector<bool> read_bits(const sat::SolveResult& r, const std::vector<Lit>& lits) {
  std::vector<bool> out;
  out.reserve(lits.size());
  for (Lit l : lits) out.push_back(r.value(l));
  return out;
}

std::int64_t read_unsigned(const sat::SolveResult& r, const Word& w) {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (r.value(w[i])) v |= std::int64_t{1} << i;
  return v;
}

}  // namespace saga::bmc
