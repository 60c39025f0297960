#pragma once

// CNF construction, Tseitin gates and a CDCL solver.
//
// Literals use the DIMACS convention: variable v is the literal v, its
// negation is -v. Two reserved values stand for the constants so gate
// builders can fold them away before anything reaches the clause store.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "saga/error.hpp"

namespace saga::sat {

using Lit = std::int32_t;

inline constexpr Lit kTrue = std::numeric_limits<Lit>::max();
inline constexpr Lit kFalse = -kTrue;

inline constexpr bool is_constant(Lit l) { return l == kTrue || l == kFalse; }
inline constexpr Lit lit_not(Lit l) { return -l; }
inline constexpr Lit from_bool(bool b) { return b ? kTrue : kFalse; }
inline constexpr int var_of(Lit l) { return l < 0 ? -l : l; }

/// A named run of consecutive variables, used to read a model back.
struct Probe {
  int first_var = 0;
  int count = 0;
};

class CnfFormula {
 public:
  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return starts_.size(); }
  std::size_t num_literals() const { return lits_.size(); }

  Lit new_var() { return ++num_vars_; }
  /// Allocates `count` consecutive variables and returns the first. A non-empty
  /// name registers them as a probe; names must be unique.
  int fresh_vars(int count, std::string_view probe_name = {});
  const Probe* probe(std::string_view name) const;
  const std::map<std::string, Probe, std::less<>>& probes() const { return probes_; }

  /// Adds a clause after dropping kFalse literals; a clause holding kTrue is
  /// discarded. An empty result makes the formula unsatisfiable.
  void add_clause(std::span<const Lit> lits);
  void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }

  std::span<const Lit> clause(std::size_t i) const;
  bool has_empty_clause() const { return has_empty_clause_; }

 private:
  int num_vars_ = 0;
  std::vector<Lit> lits_;
  std::vector<std::uint32_t> starts_;
  std::vector<Lit> scratch_;
  bool has_empty_clause_ = false;
  std::map<std::string, Probe, std::less<>> probes_;
};

// Tseitin gates. Constant and trivially-related inputs are folded without
// allocating a variable.
Lit make_and(CnfFormula& f, Lit a, Lit b);
Lit make_or(CnfFormula& f, Lit a, Lit b);
Lit make_xor(CnfFormula& f, Lit a, Lit b);
Lit make_equal(CnfFormula& f, Lit a, Lit b);
Lit make_ite(CnfFormula& f, Lit cond, Lit then_lit, Lit else_lit);
Lit make_and(CnfFormula& f, std::span<const Lit> inputs);
Lit make_or(CnfFormula& f, std::span<const Lit> inputs);

enum class Status { kSat, kUnsat, kUnknown };
const char* status_name(Status s);

struct SolveResult {
  Status status = Status::kUnknown;
  std::vector<bool> model;  // indexed by variable, entry 0 unused
  std::int64_t conflicts = 0;
  std::int64_t decisions = 0;

  bool value(Lit l) const;
};

struct SolverOptions {
  std::int64_t conflict_budget = -1;  // < 0: unlimited
};

/// Conflict-driven clause learning with two watched literals, VSIDS, first-UIP
/// learning, Luby restarts and learnt-clause reduction.
class Solver {
 public:
  explicit Solver(const CnfFormula& formula);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SolveResult solve(std::span<const Lit> assumptions = {}, const SolverOptions& options = {});

 private:
  class Impl;
  Impl* impl_;
};

/// Index of the first clause the model leaves unsatisfied, if any.
std::optional<std::size_t> find_violated_clause(const CnfFormula& f, const std::vector<bool>& model);
inline bool check_model(const CnfFormula& f, const std::vector<bool>& model) {
  return !find_violated_clause(f, model);
}

void write_dimacs(std::ostream& out, const CnfFormula& f);
CnfFormula read_dimacs(std::istream& in);

/// Reads competition-style output ("s ..." and "v ..." lines) or the
/// MiniSat result-file form ("SAT" followed by the model).
SolveResult parse_solver_output(std::string_view text, int num_vars);

/// Writes the formula to a temporary DIMACS file, runs `command <file>` and
/// parses what the program prints.
SolveResult run_external_solver(const CnfFormula& f, const std::string& command);

struct SolveConfig {
  SolverOptions solver;
  std::string external_command;  // empty: built-in solver
};

/// Solves with the configured backend and checks any model against every
/// clause; a model that fails the check raises InternalError.
SolveResult solve_checked(const CnfFormula& f, const SolveConfig& config, std::span<const Lit> assumptions = {});

}  // namespace saga::sat
