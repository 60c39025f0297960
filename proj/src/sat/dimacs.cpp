#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "saga/sat.hpp"

namespace saga::sat {

void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  std::string line;
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    line.clear();
    for (Lit l : f.clause(i)) {
      line += std::to_string(l);
      line += ' ';
    }
    line += "0\n";
    out << line;
  }
}

CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  std::string line;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<Lit> clause;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream fields(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      long long vars = -1;
      long long clauses = -1;
      fields >> p >> cnf >> vars >> clauses;
      if (header || cnf != "cnf" || vars < 0 || clauses < 0) throw Error("bad DIMACS header: " + line);
      header = true;
      f.fresh_vars(static_cast<int>(vars));
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw Error("DIMACS clause before the header");
    long long v = 0;
    while (fields >> v) {
      if (v == 0) {
        f.add_clause(clause);
        clause.clear();
      } else {
        if (v < -f.num_vars() || v > f.num_vars()) throw Error("DIMACS literal out of range: " + std::to_string(v));
        clause.push_back(static_cast<Lit>(v));
      }
    }
    if (!fields.eof()) throw Error("bad DIMACS token in: " + line);
  }
  if (!header) throw Error("missing DIMACS header");
  if (!clause.empty()) f.add_clause(clause);
  if (f.num_clauses() != declared_clauses)
    throw Error("DIMACS header declares " + std::to_string(declared_clauses) + " clauses, found " +
                std::to_string(f.num_clauses()));
  return f;
}

SolveResult parse_solver_output(std::string_view text, int num_vars) {
  SolveResult result;
  result.model.assign(static_cast<std::size_t>(num_vars) + 1, false);
  std::optional<Status> status;
  bool bare_model = false;

  auto read_values = [&](std::istringstream& fields) {
    long long v = 0;
    while (fields >> v) {
      if (v == 0) continue;
      const auto var = static_cast<std::size_t>(v < 0 ? -v : v);
      if (var > static_cast<std::size_t>(num_vars)) throw Error("solver output names unknown variable " + std::to_string(var));
      result.model[var] = v > 0;
    }
  };

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "s") {
      std::string word;
      fields >> word;
      if (word == "SATISFIABLE")
        status = Status::kSat;
      else if (word == "UNSATISFIABLE")
        status = Status::kUnsat;
      else
        status = Status::kUnknown;
    } else if (tag == "v") {
      read_values(fields);
    } else if (tag == "SAT" && !status) {
      status = Status::kSat;
      bare_model = true;
    } else if (tag == "UNSAT" && !status) {
      status = Status::kUnsat;
    } else if (bare_model && !tag.empty()) {
      std::istringstream again(line);
      read_values(again);
    }
  }
  if (!status) throw Error("solver output has no status line");
  result.status = *status;
  if (result.status != Status::kSat) result.model.clear();
  return result;
}

SolveResult run_external_solver(const CnfFormula& f, const std::string& command) {
  std::random_device rd;
  const auto path = std::filesystem::temp_directory_path() / ("saga-" + std::to_string(rd()) + ".cnf");
  {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_dimacs(out, f);
  }
  const std::string cmd = command + " '" + path.string() + "' 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw Error("cannot run external solver: " + command);
  }
  std::string output;
  std::array<char, 4096> buffer{};
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe)) output.append(buffer.data(), n);
  const int rc = ::pclose(pipe);
  std::filesystem::remove(path);
  if (rc == -1 || !WIFEXITED(rc)) throw Error("external solver did not exit normally: " + command);
  return parse_solver_output(output, f.num_vars());
}

SolveResult solve_checked(const CnfFormula& f, const SolveConfig& config, std::span<const Lit> assumptions) {
  SolveResult result;
  if (config.external_command.empty()) {
    Solver solver(f);
    result = solver.solve(assumptions, config.solver);
  } else if (assumptions.empty()) {
    result = run_external_solver(f, config.external_command);
  } else {
    CnfFormula copy = f;
    for (Lit a : assumptions) copy.add_clause({a});
    result = run_external_solver(copy, config.external_command);
  }

  if (result.status == Status::kSat) {
    if (auto bad = find_violated_clause(f, result.model))
      throw InternalError("solver model violates clause " + std::to_string(*bad));
    for (Lit a : assumptions)
      if (!result.value(a)) throw InternalError("solver model violates assumption " + std::to_string(a));
  }
  return result;
}

}  // namespace saga::sat
