#include <algorithm>
#include <cassert>

#include "saga/engine.hpp"

namespace saga::engine {

using specialize::AutoTrigger;
using specialize::CommandTrigger;
using specialize::ConditionOp;
using specialize::EffectOp;
using specialize::ScriptLine;

std::uint32_t Rng::next() {
  state_ = (state_ * 1103515245U + 12345U) & 0x7fffffffU;
  return state_;
}

bool random_percent(Rng& rng, int p) { return static_cast<int>((rng.next() >> 16) % 100) < p; }

Rng rng_after(std::uint32_t seed, std::int64_t draws) {
  Rng rng(seed);
  for (std::int64_t i = 0; i < draws; ++i) rng.next();
  return rng;
}

namespace {

const char* const kDirections[db::kNumDirections] = {"North", "South", "East", "West", "Up", "Down"};

std::int16_t wrap16(int v) { return static_cast<std::int16_t>(static_cast<std::uint16_t>(v & 0xffff)); }

}  // namespace

// Executes one turn (or one automatics pass) against a state it does not own.
class TurnRunner {
 public:
  TurnRunner(const Engine& engine, GameState& state, TurnResult& result, int noun)
      : engine_(engine), game_(engine.game_), k_(game_.constants), state_(state), result_(result), noun_(noun) {}

  void command_phase(int verb, int noun) {
    bool fired = false;
    bool matched = false;
    bool doagain = false;
    for (std::size_t ct = 0; ct < game_.lines.size(); ++ct) {
      const int vocab = vocab_of(ct);
      if (vocab != 0) doagain = false;
      if (!doagain && fired) break;
      if (!command_candidate(ct, verb, noun) && !(doagain && vocab == 0)) continue;
      matched = true;
      const Outcome outcome = run_line(ct);
      if (state_.ended) return;
      if (outcome != Outcome::kSkipped) {
        fired = true;
        if (outcome == Outcome::kContinue) doagain = true;
      }
    }
    if (!fired) builtin(verb, noun, matched);
  }

  void lamp_tick() {
    if (k_.light_time == -1 || k_.lamp_item < 0) return;
    if (!engine_.lamp_present(state_) || state_.lamp_fuel <= 0) return;
    if (--state_.lamp_fuel == 0) {
      set_flag(specialize::kDarkFlag, true);
      say("Your light has run out.");
    }
  }

  // Always consumes exactly auto_rng_slots draws, even once the game is over.
  void automatics(Rng& rng) {
    bool doagain = false;
    for (std::size_t ct = 0; ct < game_.lines.size(); ++ct) {
      const int vocab = vocab_of(ct);
      if (vocab != 0) doagain = false;
      const std::optional<int> chance = auto_chance(ct);
      if (!chance) continue;
      bool draw = false;
      if (*chance >= 100)
        draw = true;
      else if (*chance > 0)
        draw = random_percent(rng, *chance);
      if (state_.ended) continue;
      if (!draw && !doagain) continue;
      if (run_line(ct) == Outcome::kContinue) doagain = true;
    }
  }

 private:
  enum class Outcome { kSkipped, kFired, kContinue };

  int vocab_of(std::size_t ct) const { return game_.db.actions[ct].vocab; }

  bool command_candidate(std::size_t ct, int verb, int noun) const {
    if (engine_.mode_ == LineExecution::kRaw) {
      const int vv = vocab_of(ct) / 150;
      const int nv = vocab_of(ct) % 150;
      return vv != 0 && vv == verb && (nv == noun || nv == 0);
    }
    const auto* c = std::get_if<CommandTrigger>(&game_.lines[ct].trigger);
    return c && c->verb == verb && (c->noun == noun || c->noun_wildcard);
  }

  std::optional<int> auto_chance(std::size_t ct) const {
    if (engine_.mode_ == LineExecution::kRaw) {
      if (vocab_of(ct) / 150 != 0) return std::nullopt;
      return vocab_of(ct) % 150;
    }
    const auto* a = std::get_if<AutoTrigger>(&game_.lines[ct].trigger);
    if (!a) return std::nullopt;
    return a->chance;
  }

  Outcome run_line(std::size_t ct) {
    return engine_.mode_ == LineExecution::kRaw ? run_raw(static_cast<int>(ct)) : run_ir(game_.lines[ct]);
  }

  // ---- packed-action interpreter -------------------------------------------------

  Outcome run_raw(int ct) {
    const db::RawAction& line = game_.db.actions[static_cast<std::size_t>(ct)];
    int param[5] = {};
    int pptr = 0;
    for (int cc = 0; cc < 5; ++cc) {
      const int cv = line.conditions[static_cast<std::size_t>(cc)] % 20;
      const int dv = line.conditions[static_cast<std::size_t>(cc)] / 20;
      if (cv == 0)
        param[pptr++] = dv;
      else if (!condition(static_cast<ConditionOp>(cv), dv))
        return Outcome::kSkipped;
    }

    int act[4];
    act[0] = line.actions[0] / 150;
    act[1] = line.actions[0] % 150;
    act[2] = line.actions[1] / 150;
    act[3] = line.actions[1] % 150;
    pptr = 0;
    bool continuation = false;
    for (int cc = 0; cc < 4 && !state_.ended; ++cc) {
      const int a = act[cc];
      if (a >= 1 && a < 52) {
        message(a);
        continue;
      }
      if (a > 101) {
        message(a - 50);
        continue;
      }
      switch (a) {
        case 52: get(param[pptr++]); break;
        case 53: move_item(param[pptr++], state_.current_room); break;
        case 54: go_to(param[pptr++]); break;
        case 55:
        case 59: move_item(param[pptr++], 0); break;
        case 56: set_flag(specialize::kDarkFlag, true); break;
        case 57: set_flag(specialize::kDarkFlag, false); break;
        case 58: set_flag(param[pptr++], true); break;
        case 60: set_flag(param[pptr++], false); break;
        case 61: die(); break;
        case 62: {
          const int item = param[pptr++];
          move_item(item, game_.internal_location(param[pptr++]));
          break;
        }
        case 63: game_over(site_of(ct, cc)); break;
        case 64:
        case 76: look(); break;
        case 65: score(site_of(ct, cc)); break;
        case 66: inventory(); break;
        case 67: set_flag(0, true); break;
        case 68: set_flag(0, false); break;
        case 69: refill_lamp(); break;
        case 72: {
          const int i1 = param[pptr++];
          const int i2 = param[pptr++];
          swap_items(i1, i2);
          break;
        }
        case 73: continuation = true; break;
        case 74: move_item(param[pptr++], k_.carried); break;
        case 75: {
          const int i1 = param[pptr++];
          const int i2 = param[pptr++];
          move_item(i1, loc(i2));
          break;
        }
        case 77: dec_counter(); break;
        case 78: say(std::to_string(state_.current_counter)); break;
        case 79: state_.current_counter = wrap16(param[pptr++]); break;
        case 80: swap_saved_room(0); break;
        case 81: select_counter(param[pptr++]); break;
        case 82: add_counter(param[pptr++]); break;
        case 83: sub_counter(param[pptr++]); break;
        case 84:
        case 85: say(noun_text()); break;
        case 86: say(""); break;
        case 87: swap_saved_room(param[pptr++]); break;
        default: break;  // 0, 70, 71, 88, 89
      }
    }
    return continuation ? Outcome::kContinue : Outcome::kFired;
  }

  int site_of(int ct, int position) const {
    for (std::size_t s = 0; s < game_.ending_catalog.size(); ++s)
      if (game_.ending_catalog[s].line_index == ct && game_.ending_catalog[s].effect_position == position)
        return static_cast<int>(s);
    throw InternalError("no ending site for line " + std::to_string(ct));
  }

  // ---- specialized IR -------------------------------------------------------------

  Outcome run_ir(const ScriptLine& line) {
    for (const specialize::Condition& c : line.conditions)
      if (!condition(c.op, c.param)) return Outcome::kSkipped;

    bool continuation = false;
    for (const specialize::Effect& e : line.effects) {
      if (state_.ended) break;
      const auto& o = e.operands;
      switch (e.op) {
        case EffectOp::kMessage: message(e.message); break;
        case EffectOp::kGet: get(o[0]); break;
        case EffectOp::kDrop: move_item(o[0], state_.current_room); break;
        case EffectOp::kGoto: go_to(o[0]); break;
        case EffectOp::kRemove:
        case EffectOp::kRemove2: move_item(o[0], 0); break;
        case EffectOp::kSetDark: set_flag(specialize::kDarkFlag, true); break;
        case EffectOp::kClearDark: set_flag(specialize::kDarkFlag, false); break;
        case EffectOp::kSetFlag: set_flag(o[0], true); break;
        case EffectOp::kClearFlag: set_flag(o[0], false); break;
        case EffectOp::kDie: die(); break;
        case EffectOp::kPutItem: move_item(o[0], game_.internal_location(o[1])); break;
        case EffectOp::kGameOver: game_over(e.ending_site); break;
        case EffectOp::kLook:
        case EffectOp::kLook2: look(); break;
        case EffectOp::kScore: score(e.ending_site); break;
        case EffectOp::kInventory: inventory(); break;
        case EffectOp::kSetFlag0: set_flag(0, true); break;
        case EffectOp::kClearFlag0: set_flag(0, false); break;
        case EffectOp::kRefillLamp: refill_lamp(); break;
        case EffectOp::kSwapItems: swap_items(o[0], o[1]); break;
        case EffectOp::kContinue: continuation = true; break;
        case EffectOp::kTake: move_item(o[0], k_.carried); break;
        case EffectOp::kPutWith: move_item(o[0], loc(o[1])); break;
        case EffectOp::kDecCounter: dec_counter(); break;
        case EffectOp::kPrintCounter: say(std::to_string(state_.current_counter)); break;
        case EffectOp::kSetCounter: state_.current_counter = wrap16(o[0]); break;
        case EffectOp::kSwapRoom: swap_saved_room(0); break;
        case EffectOp::kSelectCounter: select_counter(o[0]); break;
        case EffectOp::kAddCounter: add_counter(o[0]); break;
        case EffectOp::kSubCounter: sub_counter(o[0]); break;
        case EffectOp::kPrintNoun:
        case EffectOp::kPrintNounLine: say(noun_text()); break;
        case EffectOp::kNewline: say(""); break;
        case EffectOp::kSwapSavedRoom: swap_saved_room(o[0]); break;
        case EffectOp::kNop:
        case EffectOp::kClearScreen:
        case EffectOp::kSave:
        case EffectOp::kPause:
        case EffectOp::kNop89: break;
      }
    }
    return continuation ? Outcome::kContinue : Outcome::kFired;
  }

  // ---- shared semantics -----------------------------------------------------------

  int loc(int item) const { return state_.item_locations[static_cast<std::size_t>(item)]; }

  bool condition(ConditionOp op, int p) const {
    const int room = state_.current_room;
    switch (op) {
      case ConditionOp::kParam: return true;
      case ConditionOp::kCarried: return loc(p) == k_.carried;
      case ConditionOp::kHere: return loc(p) == room;
      case ConditionOp::kPresent: return loc(p) == k_.carried || loc(p) == room;
      case ConditionOp::kInRoom: return room == p;
      case ConditionOp::kNotHere: return loc(p) != room;
      case ConditionOp::kNotCarried: return loc(p) != k_.carried;
      case ConditionOp::kNotInRoom: return room != p;
      case ConditionOp::kFlagSet: return state_.flag(p);
      case ConditionOp::kFlagClear: return !state_.flag(p);
      case ConditionOp::kCarryingAny: return state_.carried_count != 0;
      case ConditionOp::kCarryingNone: return state_.carried_count == 0;
      case ConditionOp::kNotPresent: return loc(p) != k_.carried && loc(p) != room;
      case ConditionOp::kInPlay: return loc(p) != 0;
      case ConditionOp::kNotInPlay: return loc(p) == 0;
      case ConditionOp::kCounterLe: return state_.current_counter <= p;
      case ConditionOp::kCounterGt: return state_.current_counter > p;
      case ConditionOp::kAtInitial: return loc(p) == game_.initial_locations[static_cast<std::size_t>(p)];
      case ConditionOp::kMoved: return loc(p) != game_.initial_locations[static_cast<std::size_t>(p)];
      case ConditionOp::kCounterEq: return state_.current_counter == p;
    }
    return false;
  }

  void say(std::string text) { result_.messages.push_back(std::move(text)); }

  void message(int n) {
    if (n >= 0 && n < static_cast<int>(game_.db.messages.size()))
      say(game_.db.messages[static_cast<std::size_t>(n)]);
  }

  void move_item(int item, int to) {
    int& where = state_.item_locations[static_cast<std::size_t>(item)];
    if (where == state_.current_room || to == state_.current_room) result_.look_requested = true;
    if (where == k_.carried) --state_.carried_count;
    if (to == k_.carried) ++state_.carried_count;
    where = to;
  }

  void get(int item) {
    if (state_.carried_count >= k_.max_carry) {
      say("I've too much to carry!");
      return;
    }
    move_item(item, k_.carried);
  }

  void go_to(int room) {
    state_.current_room = room;
    result_.look_requested = true;
  }

  void set_flag(int n, bool on) {
    if (on)
      state_.flags |= 1U << n;
    else
      state_.flags &= ~(1U << n);
  }

  void die() {
    say("I am dead.");
    set_flag(specialize::kDarkFlag, false);
    go_to(k_.num_rooms);
    look();
  }

  void end_game(int site) {
    state_.ended = Ending{site, game_.ending_catalog[static_cast<std::size_t>(site)].label};
    result_.ending = state_.ended;
  }

  void game_over(int site) {
    say("The game is now over.");
    end_game(site);
  }

  void score(int site) {
    int stored = 0;
    for (std::size_t i = 0; i < state_.item_locations.size(); ++i)
      if (game_.treasures[i] && state_.item_locations[i] == k_.treasure_room) ++stored;
    const int rating = k_.num_treasures > 0 ? stored * 100 / k_.num_treasures : 100;
    say("I've stored " + std::to_string(stored) + " treasures.  On a scale of 0 to 100, that rates " +
        std::to_string(rating) + ".");
    if (stored >= k_.num_treasures) {
      say("Well done.");
      game_over(site);
    }
  }

  void inventory() {
    std::string list;
    for (std::size_t i = 0; i < state_.item_locations.size(); ++i) {
      if (state_.item_locations[i] != k_.carried) continue;
      if (!list.empty()) list += " - ";
      list += game_.db.items[i].description;
    }
    say("I'm carrying: " + (list.empty() ? std::string("Nothing") : list));
  }

  void refill_lamp() {
    state_.lamp_fuel = k_.light_time;
    move_item(k_.lamp_item, k_.carried);
  }

  void swap_items(int a, int b) {
    const int la = loc(a);
    const int lb = loc(b);
    move_item(a, lb);
    move_item(b, la);
  }

  void dec_counter() {
    if (state_.current_counter >= 0) state_.current_counter = wrap16(state_.current_counter - 1);
  }

  void add_counter(int p) { state_.current_counter = wrap16(state_.current_counter + p); }

  void sub_counter(int p) {
    const int v = state_.current_counter - p;
    state_.current_counter = wrap16(v < -1 ? -1 : v);
  }

  void select_counter(int slot) {
    std::swap(state_.current_counter, state_.counters[static_cast<std::size_t>(slot)]);
  }

  void swap_saved_room(int slot) {
    std::swap(state_.current_room, state_.saved_rooms[static_cast<std::size_t>(slot)]);
    result_.look_requested = true;
  }

  std::string noun_text() const {
    return std::string(db::bare_word(game_.db.nouns[static_cast<std::size_t>(noun_)]));
  }

  void look() {
    for (std::string& line : engine_.describe_room(state_)) say(std::move(line));
  }

  void builtin(int verb, int noun, bool matched) {
    if (verb == specialize::kVerbGo && noun >= 1 && noun <= db::kNumDirections) {
      const bool dark = engine_.is_dark(state_);
      if (dark) say("Dangerous to move in the dark!");
      const int exit = game_.db.rooms[static_cast<std::size_t>(state_.current_room)]
                           .exits[static_cast<std::size_t>(noun - 1)];
      if (exit != 0) {
        go_to(exit);
        say("O.K.");
        look();
      } else if (dark) {
        say("I fell down and broke my neck.");
        end_game(game_.dark_fall_site());
      } else {
        say("You can't go in that direction.");
      }
      return;
    }
    if (verb == specialize::kVerbGet || verb == specialize::kVerbDrop) {
      if (noun == 0) {
        say("What ?");
        return;
      }
      if (verb == specialize::kVerbGet) {
        if (state_.carried_count >= k_.max_carry) {
          say("I've too much to carry.");
          return;
        }
        const auto item = engine_.match_up_item(noun, state_.current_room, state_);
        if (!item) {
          say("It is beyond my power to do that.");
          return;
        }
        move_item(*item, k_.carried);
      } else {
        const auto item = engine_.match_up_item(noun, k_.carried, state_);
        if (!item) {
          say("It's beyond my power to do that.");
          return;
        }
        move_item(*item, state_.current_room);
      }
      say("O.K.");
      return;
    }
    say(matched ? "I can't do that yet." : "I don't understand your command.");
  }

  const Engine& engine_;
  const SpecializedGame& game_;
  const specialize::Constants& k_;
  GameState& state_;
  TurnResult& result_;
  int noun_;
};

Engine::Engine(const SpecializedGame& game, LineExecution mode) : game_(game), mode_(mode) {}

GameState Engine::initial_state() const {
  GameState s;
  s.item_locations = game_.initial_locations;
  s.current_room = game_.constants.player_room;
  s.lamp_fuel = game_.constants.light_time;
  s.carried_count = count_carried(s);
  return s;
}

TurnResult Engine::run_initial_automatics(GameState& state, Rng& rng) const {
  TurnResult result;
  TurnRunner(*this, state, result, 0).automatics(rng);
  return result;
}

TurnResult Engine::perform_turn(GameState& state, Rng& rng, int verb, int noun) const {
  if (state.ended) throw Error("the game has already ended");
  const int max_word = game_.constants.num_words;
  if (verb < 0 || verb > max_word || noun < 0 || noun > max_word)
    throw Error("verb/noun index out of range: " + std::to_string(verb) + " " + std::to_string(noun));

  TurnResult result;
  ++state.turn_index;
  TurnRunner runner(*this, state, result, noun);
  runner.command_phase(verb, noun);
  if (!state.ended) runner.lamp_tick();
  runner.automatics(rng);
  assert(state.carried_count == count_carried(state));
  return result;
}

int Engine::count_carried(const GameState& state) const {
  return static_cast<int>(std::count(state.item_locations.begin(), state.item_locations.end(), game_.constants.carried));
}

std::optional<int> Engine::match_up_item(int noun, int location, const GameState& state) const {
  for (int item : game_.match_table.for_noun(noun))
    if (state.item_locations[static_cast<std::size_t>(item)] == location) return item;
  return std::nullopt;
}

bool Engine::lamp_present(const GameState& state) const {
  const int lamp = game_.constants.lamp_item;
  if (lamp < 0) return false;
  const int where = state.item_locations[static_cast<std::size_t>(lamp)];
  return where != 0 && (where == game_.constants.carried || where == state.current_room);
}

bool Engine::is_dark(const GameState& state) const {
  return state.flag(specialize::kDarkFlag) && !lamp_present(state);
}

std::vector<std::string> Engine::describe_room(const GameState& state) const {
  if (is_dark(state)) return {"I can't see. It is too dark!"};
  std::vector<std::string> out;
  const db::Room& room = game_.db.rooms[static_cast<std::size_t>(state.current_room)];
  if (!room.description.empty() && room.description.front() == '*')
    out.push_back(room.description.substr(1));
  else
    out.push_back("I'm in a " + room.description);

  std::string exits;
  for (int d = 0; d < db::kNumDirections; ++d) {
    if (room.exits[static_cast<std::size_t>(d)] == 0) continue;
    exits += exits.empty() ? "" : ", ";
    exits += kDirections[d];
  }
  out.push_back("Obvious exits: " + (exits.empty() ? std::string("none") : exits) + ".");

  std::string seen;
  for (std::size_t i = 0; i < state.item_locations.size(); ++i) {
    if (state.item_locations[i] != state.current_room) continue;
    seen += seen.empty() ? "" : " - ";
    seen += game_.db.items[i].description;
  }
  if (!seen.empty()) out.push_back("I can also see: " + seen);
  return out;
}

}  // namespace saga::engine
