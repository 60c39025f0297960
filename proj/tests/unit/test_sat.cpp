#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "saga/sat.hpp"

using namespace saga;
using namespace saga::sat;

namespace {

// Satisfiability by brute force over every assignment of the formula's variables.
std::optional<std::vector<bool>> enumerate(const CnfFormula& f, const std::vector<Lit>& assumptions = {}) {
  const int n = f.num_vars();
  REQUIRE(n <= 22);
  std::vector<bool> model(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (int v = 1; v <= n; ++v) model[static_cast<std::size_t>(v)] = (bits >> (v - 1)) & 1U;
    auto holds = [&](Lit l) { return model[static_cast<std::size_t>(var_of(l))] == (l > 0); };
    bool ok = std::all_of(assumptions.begin(), assumptions.end(), holds);
    for (std::size_t c = 0; ok && c < f.num_clauses(); ++c) {
      const auto cl = f.clause(c);
      ok = std::any_of(cl.begin(), cl.end(), holds);
    }
    if (ok) return model;
  }
  return std::nullopt;
}

CnfFormula random_formula(std::mt19937_64& rng, int vars, int clauses, int width) {
  CnfFormula f;
  f.fresh_vars(vars);
  for (int c = 0; c < clauses; ++c) {
    std::vector<Lit> cl;
    const int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(width));
    for (int i = 0; i < w; ++i) {
      const Lit v = 1 + static_cast<Lit>(rng() % static_cast<std::uint64_t>(vars));
      cl.push_back(rng() % 2 ? v : -v);
    }
    f.add_clause(cl);
  }
  return f;
}

bool eval(Lit l, const std::vector<bool>& model) {
  if (l == kTrue) return true;
  if (l == kFalse) return false;
  return model[static_cast<std::size_t>(var_of(l))] == (l > 0);
}

// For every assignment of the inputs, the gate output must be forced to `expected`.
template <typename Build, typename Truth>
void check_gate(int inputs, Build build, Truth truth) {
  CnfFormula f;
  f.fresh_vars(inputs);
  std::vector<Lit> in;
  for (int i = 1; i <= inputs; ++i) in.push_back(i);
  const Lit out = build(f, in);
  for (int bits = 0; bits < (1 << inputs); ++bits) {
    std::vector<Lit> assume;
    std::vector<bool> values;
    for (int i = 0; i < inputs; ++i) {
      values.push_back((bits >> i) & 1);
      assume.push_back(values.back() ? i + 1 : -(i + 1));
    }
    const bool expected = truth(values);
    std::vector<Lit> forced = assume;
    forced.push_back(expected ? out : -out);
    CHECK(enumerate(f, forced));
    std::vector<Lit> wrong = assume;
    wrong.push_back(expected ? -out : out);
    if (!is_constant(out)) CHECK_FALSE(enumerate(f, wrong));
  }
}

}  // namespace

TEST_CASE("gate truth tables") {
  using V = std::vector<bool>;
  check_gate(2, [](CnfFormula& f, const std::vector<Lit>& x) { return make_and(f, x[0], x[1]); },
             [](const V& v) { return v[0] && v[1]; });
  check_gate(2, [](CnfFormula& f, const std::vector<Lit>& x) { return make_or(f, x[0], -x[1]); },
             [](const V& v) { return v[0] || !v[1]; });
  check_gate(2, [](CnfFormula& f, const std::vector<Lit>& x) { return make_xor(f, x[0], x[1]); },
             [](const V& v) { return v[0] != v[1]; });
  check_gate(2, [](CnfFormula& f, const std::vector<Lit>& x) { return make_equal(f, x[0], x[1]); },
             [](const V& v) { return v[0] == v[1]; });
  check_gate(3, [](CnfFormula& f, const std::vector<Lit>& x) { return make_ite(f, x[0], x[1], x[2]); },
             [](const V& v) { return v[0] ? v[1] : v[2]; });
  check_gate(3, [](CnfFormula& f, const std::vector<Lit>& x) { return make_ite(f, x[0], x[1], -x[1]); },
             [](const V& v) { return v[0] ? v[1] : !v[1]; });
  check_gate(4, [](CnfFormula& f, const std::vector<Lit>& x) { return make_and(f, std::span<const Lit>(x)); },
             [](const V& v) { return v[0] && v[1] && v[2] && v[3]; });
  check_gate(4, [](CnfFormula& f, const std::vector<Lit>& x) { return make_or(f, std::span<const Lit>(x)); },
             [](const V& v) { return v[0] || v[1] || v[2] || v[3]; });
}

TEST_CASE("constant folding allocates nothing") {
  CnfFormula f;
  const Lit a = f.new_var();
  CHECK(make_and(f, a, kTrue) == a);
  CHECK(make_and(f, a, kFalse) == kFalse);
  CHECK(make_and(f, a, -a) == kFalse);
  CHECK(make_or(f, a, -a) == kTrue);
  CHECK(make_xor(f, a, a) == kFalse);
  CHECK(make_xor(f, a, kTrue) == -a);
  CHECK(make_ite(f, kTrue, a, kFalse) == a);
  CHECK(make_ite(f, a, kTrue, kFalse) == a);
  CHECK(f.num_vars() == 1);
  CHECK(f.num_clauses() == 0);
}

TEST_CASE("clause store") {
  CnfFormula f;
  const int first = f.fresh_vars(3, "x");
  CHECK(first == 1);
  REQUIRE(f.probe("x"));
  CHECK(f.probe("x")->count == 3);
  CHECK(f.probe("y") == nullptr);
  CHECK_THROWS_AS(f.fresh_vars(1, "x"), InternalError);
  f.add_clause({1, kFalse, -2});
  f.add_clause({3, kTrue});
  CHECK(f.num_clauses() == 1);
  CHECK(std::vector<Lit>(f.clause(0).begin(), f.clause(0).end()) == std::vector<Lit>{1, -2});
  CHECK_THROWS_AS(f.add_clause({4}), InternalError);
  CHECK_FALSE(f.has_empty_clause());
  f.add_clause({kFalse});
  CHECK(f.has_empty_clause());
  Solver s(f);
  CHECK(s.solve().status == Status::kUnsat);
}

TEST_CASE("solver agrees with enumeration on random formulas") {
  std::mt19937_64 rng(2024);
  int sat = 0;
  for (int n = 0; n < 400; ++n) {
    const int vars = 1 + static_cast<int>(rng() % 14);
    const int clauses = static_cast<int>(rng() % static_cast<std::uint64_t>(vars * 6 + 1));
    const CnfFormula f = random_formula(rng, vars, clauses, 3);
    const auto truth = enumerate(f);
    Solver solver(f);
    const SolveResult r = solver.solve();
    CAPTURE(n);
    REQUIRE(r.status != Status::kUnknown);
    CHECK((r.status == Status::kSat) == truth.has_value());
    if (r.status == Status::kSat) {
      ++sat;
      CHECK(check_model(f, r.model));
    }
  }
  CHECK(sat > 50);
  CHECK(sat < 380);
}

TEST_CASE("assumptions") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 200; ++n) {
    const CnfFormula f = random_formula(rng, 10, 30, 3);
    Solver solver(f);
    for (int round = 0; round < 4; ++round) {
      std::vector<Lit> assume;
      for (int i = 0; i < 3; ++i) {
        const Lit v = 1 + static_cast<Lit>(rng() % 10);
        assume.push_back(rng() % 2 ? v : -v);
      }
      const SolveResult r = solver.solve(assume);
      const auto truth = enumerate(f, assume);
      CAPTURE(n);
      CHECK((r.status == Status::kSat) == truth.has_value());
      if (r.status == Status::kSat) {
        CHECK(check_model(f, r.model));
        for (Lit a : assume) CHECK(r.value(a));
      }
    }
  }
}

TEST_CASE("structured instances") {
  SUBCASE("pigeonhole 6 into 5 is unsatisfiable") {
    const int pigeons = 6, holes = 5;
    CnfFormula f;
    f.fresh_vars(pigeons * holes);
    auto x = [&](int p, int h) { return p * holes + h + 1; };
    for (int p = 0; p < pigeons; ++p) {
      std::vector<Lit> cl;
      for (int h = 0; h < holes; ++h) cl.push_back(x(p, h));
      f.add_clause(cl);
    }
    for (int h = 0; h < holes; ++h)
      for (int p = 0; p < pigeons; ++p)
        for (int q = p + 1; q < pigeons; ++q) f.add_clause({-x(p, h), -x(q, h)});
    Solver s(f);
    const SolveResult r = s.solve();
    CHECK(r.status == Status::kUnsat);
    CHECK(r.conflicts > 0);

    Solver limited(f);
    SolverOptions opts;
    opts.conflict_budget = 5;
    CHECK(limited.solve({}, opts).status == Status::kUnknown);
  }
  SUBCASE("xor chain parity") {
    CnfFormula f;
    f.fresh_vars(40);
    Lit acc = 1;
    for (Lit v = 2; v <= 40; ++v) acc = make_xor(f, acc, v);
    f.add_clause({acc});
    for (Lit v = 1; v < 40; ++v) f.add_clause({-v});
    Solver s(f);
    const SolveResult r = s.solve();
    REQUIRE(r.status == Status::kSat);
    CHECK(r.value(40));
  }
}

TEST_CASE("dimacs round trip") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const CnfFormula f = random_formula(rng, 12, 40, 4);
    std::stringstream s;
    write_dimacs(s, f);
    const CnfFormula g = read_dimacs(s);
    REQUIRE(g.num_vars() == f.num_vars());
    REQUIRE(g.num_clauses() == f.num_clauses());
    for (std::size_t c = 0; c < f.num_clauses(); ++c)
      CHECK(std::vector<Lit>(f.clause(c).begin(), f.clause(c).end()) ==
            std::vector<Lit>(g.clause(c).begin(), g.clause(c).end()));
  }
  std::istringstream comments("c hello\np cnf 2 2\n1 -2\n 0 2 0\n");
  const CnfFormula h = read_dimacs(comments);
  CHECK(h.num_clauses() == 2);

  for (const char* bad : {"1 2 0\n", "p cnf 2 1\n3 0\n", "p cnf 2 2\n1 0\n", "p dnf 2 1\n1 0\n", "p cnf 2 1\n1 x 0\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_dimacs(in), Error);
  }
}

TEST_CASE("solver output formats") {
  SolveResult r = parse_solver_output("c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3);
  CHECK(r.status == Status::kSat);
  CHECK(r.model == std::vector<bool>{false, true, false, true});
  r = parse_solver_output("SAT\n-1 2 -3 0\n", 3);
  CHECK(r.status == Status::kSat);
  CHECK(r.model == std::vector<bool>{false, false, true, false});
  CHECK(parse_solver_output("s UNSATISFIABLE\n", 3).status == Status::kUnsat);
  CHECK(parse_solver_output("UNSAT\n", 3).status == Status::kUnsat);
  CHECK(parse_solver_output("s UNKNOWN\n", 3).status == Status::kUnknown);
  CHECK_THROWS_AS(parse_solver_output("nothing here\n", 3), Error);
  CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv 9 0\n", 3), Error);
}

TEST_CASE("checked solving rejects a bad external model") {
  CnfFormula f;
  f.fresh_vars(2);
  f.add_clause({1});
  f.add_clause({-1, 2});
  SolveConfig lying;
  lying.external_command = "printf 's SATISFIABLE\\nv -1 -2 0\\n' #";
  CHECK_THROWS_AS(solve_checked(f, lying), InternalError);

  SolveConfig builtin;
  const SolveResult r = solve_checked(f, builtin);
  CHECK(r.status == Status::kSat);
  CHECK(r.value(2));
}

TEST_CASE("external solver agrees with the built-in one" * doctest::skip(std::system("python3 -c 'import pysat' >/dev/null 2>&1") != 0)) {
  const std::string command = std::string("python3 ") + SAGA_TOOLS_DIR + "/pysat_solve.py";
  std::mt19937_64 rng(17);
  for (int n = 0; n < 20; ++n) {
    const CnfFormula f = random_formula(rng, 15, 65, 3);
    SolveConfig ext;
    ext.external_command = command;
    const SolveResult a = solve_checked(f, ext);
    const SolveResult b = solve_checked(f, {});
    CHECK(a.status == b.status);
  }
}
