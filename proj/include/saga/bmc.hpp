#pragma once

// Bounded model checking over the specialized game: one turn becomes one layer
// of gates over a bit-packed state, K layers are chained, and the solver is
// asked for inputs that reach an ending site.

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "saga/engine.hpp"
#include "saga/sat.hpp"
#include "saga/specialize.hpp"

namespace saga::bmc {

using engine::GameState;
using engine::Move;
using sat::Lit;
using specialize::SpecializedGame;

inline constexpr int kInputBits = 8;  // per word: verb and noun are 8 bits each

/// Bit offsets of every GameState field in the packed vector.
class StateLayout {
 public:
  explicit StateLayout(const SpecializedGame& game);

  int bits_per_location() const { return bpl_; }
  int item(int i) const { return bpl_ * i; }
  int room() const { return room_; }
  int flags() const { return flags_; }
  int current_counter() const { return cc_; }
  int counter(int slot) const { return counters_ + 16 * slot; }
  int saved_room(int slot) const { return saved_ + bpl_ * slot; }
  int lamp() const { return lamp_; }
  int lamp_width() const { return lamp_width_; }
  int ended() const { return ended_; }
  int ended_width() const { return ended_width_; }
  int total_bits() const { return total_; }

  /// Throws saga::Error when a field does not fit its bit-group.
  std::vector<bool> pack(const GameState& state) const;
  /// turn_index is not part of the packed state and comes back as 0.
  GameState unpack(const std::vector<bool>& bits) const;

 private:
  const SpecializedGame& game_;
  int num_items_ = 0;
  int bpl_ = 0;
  int room_ = 0, flags_ = 0, cc_ = 0, counters_ = 0, saved_ = 0;
  int lamp_ = 0, lamp_width_ = 0, ended_ = 0, ended_width_ = 0, total_ = 0;
};

/// Draw outcomes per automatics pass; pass 0 is the one before the first
/// move, pass k + 1 belongs to move k (0-based).
using RandomSchedule = std::vector<std::vector<bool>>;
RandomSchedule precompute_random_schedule(const SpecializedGame& game, std::uint32_t seed, int max_moves);

using Word = std::vector<Lit>;  // least significant bit first

/// Gate construction with constant folding and structural hashing.
class Builder {
 public:
  explicit Builder(sat::CnfFormula& f) : f_(f) {}
  sat::CnfFormula& formula() { return f_; }

  Lit and2(Lit a, Lit b);
  Lit or2(Lit a, Lit b) { return -and2(-a, -b); }
  Lit xor2(Lit a, Lit b);
  Lit ite(Lit c, Lit t, Lit e);
  Lit and_all(const std::vector<Lit>& lits);
  Lit or_any(const std::vector<Lit>& lits);

  static Word constant(std::int64_t value, int width);
  Word ite(Lit c, const Word& t, const Word& e);
  Lit eq(const Word& a, const Word& b);
  /// False when `value` cannot be represented in the word's width.
  Lit eq_const(const Word& w, std::int64_t value);
  Lit eq_const_signed(const Word& w, std::int64_t value);
  Word add(const Word& a, const Word& b);
  Word sub(const Word& a, const Word& b);
  Lit ult(const Word& a, const Word& b);
  Lit slt(const Word& a, const Word& b);
  Lit ule_const(const Word& w, std::uint64_t value);
  Lit sle_const(const Word& w, std::int64_t value);
  Word popcount(const std::vector<Lit>& lits);

 private:
  struct Key {
    int op;
    Lit a, b, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Lit add_carry(const Word& a, const Word& b, Lit carry_in, Word* sum);

  sat::CnfFormula& f_;
  std::unordered_map<Key, Lit, KeyHash> cache_;
};

/// Packed state as literals, laid out as in StateLayout.
struct SymState {
  std::vector<Lit> bits;
};

struct StepInputs {
  Word verb;
  Word noun;
  std::vector<Lit> random;  // one per rng slot
};

struct StepEncoding {
  StepInputs inputs;
  SymState pre;
  SymState post;
  std::vector<Lit> fired_endings;  // per ending site
};

/// Fresh pre-state variables (registered as probe "state_<k>") and inputs
/// (probes "input_verb_<k>", "input_noun_<k>", and "random_<k>" when the
/// draws are free). Range clauses keep verb and noun <= num_words. With a
/// schedule row the draws are constants.
StepEncoding encode_step(Builder& b, const SpecializedGame& game, const StateLayout& layout, int k,
                         const std::vector<bool>* schedule_row);

/// Adds unit clauses fixing `s` to a concrete state.
void constrain_state(sat::CnfFormula& f, const SymState& s, const std::vector<bool>& bits);
/// Adds equivalence clauses a <-> b bit by bit.
void tie_states(Builder& b, const SymState& a, const SymState& c);

std::vector<bool> read_bits(const sat::SolveResult& r, const std::vector<Lit>& lits);
std::int64_t read_unsigned(const sat::SolveResult& r, const Word& w);

struct BoundedEncoding {
  sat::CnfFormula formula;
  std::vector<StepEncoding> steps;
  Lit goal = sat::kFalse;
};

struct SolveOptions {
  std::uint32_t seed = engine::kDefaultSeed;
  int max_moves = 20;
  std::optional<std::set<int>> goal_lines;  // line indices; specialize::kBuiltinLine for the dark fall
  bool free_random = false;
  sat::SolveConfig solver;
};

/// Ending sites selected by the goal filter. Throws when the filter matches none.
std::vector<int> goal_sites(const SpecializedGame& game, const std::optional<std::set<int>>& goal_lines);

/// Formula for exactly K moves from the state after the initial automatics.
BoundedEncoding encode_bounded(const SpecializedGame& game, int k, const SolveOptions& options);

struct BoundStats {
  int k = 0;
  int vars = 0;
  std::size_t clauses = 0;
  double encode_ms = 0;
  double solve_ms = 0;
  sat::Status status = sat::Status::kUnknown;
};

enum class Outcome { kTrace, kExhausted, kUnknown };

struct SolveResult {
  Outcome outcome = Outcome::kExhausted;
  std::vector<Move> moves;
  std::string ending_label;
  int bound = 0;  // K of the trace, or last K tried
  bool verified = false;
  std::vector<BoundStats> stats;
};

/// Iterative deepening over K = 0..max_moves. Every trace from a fixed
/// schedule is replayed in the engine; a mismatch raises InternalError.
SolveResult solve_bounded(const SpecializedGame& game, const SolveOptions& options);

struct OracleOptions {
  std::uint32_t seed = engine::kDefaultSeed;
  int max_depth = 8;
  std::optional<std::set<int>> goal_lines;
  std::size_t state_budget = 5'000'000;
};

/// Breadth-first search over engine states; a shortest move list reaching a
/// goal ending, or nullopt. Throws saga::Error when the state budget runs out.
std::optional<std::vector<Move>> bfs_oracle(const SpecializedGame& game, const OracleOptions& options);

}  // namespace saga::bmc
