// Command-line front end: parse, optionally prune, specialize, then solve,
// play, verify, dump, run the search oracle or print encoding statistics.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "saga/bmc.hpp"
#include "saga/dbformat.hpp"
#include "saga/engine.hpp"
#include "saga/specialize.hpp"

namespace {

using namespace saga;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUnknown = 3;

struct Config {
  std::string game_path;
  std::uint32_t seed = engine::kDefaultSeed;
  bool prune = false;
  int max_moves = 20;
  std::vector<int> goal_lines;
  bool free_random = false;
  std::string external_solver;
  std::string emit_dimacs;
  std::int64_t conflict_budget = -1;
  std::string out_path;
  std::string trace_path;
  std::string dump_format = "text";
  int max_depth = 8;
  std::vector<int> stats_bounds;
  bool stats_solve = true;
  int sweep_bound = 10;
  bool raw_lines = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

db::GameDatabase load(const Config& cfg) {
  db::GameDatabase db = db::load_database(cfg.game_path);
  if (cfg.prune) db = specialize::prune_placeholders(db);
  return db;
}

std::optional<std::set<int>> goal_filter(const Config& cfg) {
  if (cfg.goal_lines.empty()) return std::nullopt;
  return std::set<int>(cfg.goal_lines.begin(), cfg.goal_lines.end());
}

bmc::SolveOptions solve_options(const Config& cfg) {
  bmc::SolveOptions o;
  o.seed = cfg.seed;
  o.max_moves = cfg.max_moves;
  o.goal_lines = goal_filter(cfg);
  o.free_random = cfg.free_random;
  o.solver.solver.conflict_budget = cfg.conflict_budget;
  o.solver.external_command = cfg.external_solver;
  if (o.solver.external_command.empty())
    if (const char* env = std::getenv("SAGA_EXTERNAL_SOLVER")) o.solver.external_command = env;
  return o;
}

std::string word(const std::vector<std::string>& words, int index) {
  if (index <= 0 || index >= static_cast<int>(words.size())) return {};
  return std::string(db::bare_word(words[static_cast<std::size_t>(index)]));
}

int cmd_solve(const Config& cfg) {
  const specialize::SpecializedGame game = specialize::specialize_game(load(cfg));
  const bmc::SolveOptions options = solve_options(cfg);
  const bmc::SolveResult r = bmc::solve_bounded(game, options);

  if (!cfg.emit_dimacs.empty()) {
    std::ofstream out(cfg.emit_dimacs);
    if (!out) throw Error("cannot write " + cfg.emit_dimacs);
    sat::write_dimacs(out, bmc::encode_bounded(game, r.bound, options).formula);
  }

  switch (r.outcome) {
    case bmc::Outcome::kTrace: {
      Output out(cfg.out_path);
      engine::write_trace(out.get(), {cfg.seed, r.moves}, game.db);
      std::cout << "SOLVED k=" << r.bound << " ending=" << r.ending_label << (r.verified ? "" : " unverified") << '\n';
      return kExitOk;
    }
    case bmc::Outcome::kExhausted:
      std::cout << "EXHAUSTED k=" << r.bound << '\n';
      return kExitExhausted;
    case bmc::Outcome::kUnknown:
      std::cout << "UNKNOWN k=" << r.bound << " (conflict budget exhausted)\n";
      return kExitUnknown;
  }
  return kExitUnknown;
}

void print_lines(const std::vector<std::string>& lines) {
  for (const std::string& l : lines) std::cout << l << '\n';
}

int cmd_play(const Config& cfg) {
  const specialize::SpecializedGame game = specialize::specialize_game(load(cfg));
  const engine::Engine eng(game);
  engine::Rng rng(cfg.seed);
  engine::GameState state = eng.initial_state();

  print_lines(eng.describe_room(state));
  print_lines(eng.run_initial_automatics(state, rng).messages);
  std::string input;
  while (!state.ended) {
    std::cout << "\nTell me what to do ? " << std::flush;
    if (!std::getline(std::cin, input)) {
      std::cout << '\n';
      return kExitOk;
    }
    const engine::ParsedWords parsed = engine::parse_player_words(input, game.db);
    if (!parsed.move) {
      std::cout << parsed.error << '\n';
      continue;
    }
    const engine::TurnResult turn = eng.perform_turn(state, rng, parsed.move->verb, parsed.move->noun);
    print_lines(turn.messages);
  }
  std::cout << "The game has ended (" << state.ended->label << ").\n";
  return kExitOk;
}

int cmd_verify(const Config& cfg) {
  const specialize::SpecializedGame game = specialize::specialize_game(load(cfg));
  std::ifstream in(cfg.trace_path);
  if (!in) throw Error("cannot read " + cfg.trace_path);
  engine::TraceFile trace;
  try {
    trace = engine::read_trace(in);
  } catch (const engine::TraceParseError& e) {
    std::cerr << cfg.trace_path << ": " << e.what() << '\n';
    return kExitInput;
  }

  const auto mode = cfg.raw_lines ? engine::LineExecution::kRaw : engine::LineExecution::kSpecialized;
  engine::ReplayReport report;
  try {
    report = engine::replay_trace(game, trace.seed, trace.moves, mode);
  } catch (const engine::ReplayError& e) {
    std::cerr << "trace diverges at move " << e.move_index() << ": " << e.what() << '\n';
    return kExitInput;
  }

  print_lines(report.opening_messages);
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const engine::Move m = report.steps[i].move;
    std::cout << "> " << i + 1 << ": " << m.verb << ' ' << m.noun << "  " << word(game.db.verbs, m.verb) << ' '
              << word(game.db.nouns, m.noun) << '\n';
    print_lines(report.steps[i].messages);
  }
  if (!report.ending) {
    std::cout << "NO ENDING\n";
    return kExitExhausted;
  }
  std::cout << "VERIFIED ending=" << report.ending->label << " at move " << report.ending_move << '\n';
  return kExitOk;
}

int cmd_dump(const Config& cfg) {
  const specialize::SpecializedGame game = specialize::specialize_game(load(cfg));
  Output out(cfg.out_path);
  if (cfg.dump_format == "tree")
    out.get() << specialize::dump_tree(game);
  else if (cfg.dump_format == "dat")
    out.get() << db::serialize_database(game.db);
  else
    out.get() << specialize::dump_text(game);
  return kExitOk;
}

int cmd_oracle(const Config& cfg) {
  const specialize::SpecializedGame game = specialize::specialize_game(load(cfg));
  bmc::OracleOptions o;
  o.seed = cfg.seed;
  o.max_depth = cfg.max_depth;
  o.goal_lines = goal_filter(cfg);
  const auto moves = bmc::bfs_oracle(game, o);
  Output out(cfg.out_path);
  if (!moves) {
    out.get() << "NONE\n";
    return kExitExhausted;
  }
  engine::write_trace(out.get(), {cfg.seed, *moves}, game.db);
  return kExitOk;
}

int cmd_stats(const Config& cfg) {
  const db::GameDatabase db = load(cfg);
  const specialize::SpecializedGame game = specialize::specialize_game(db);
  bmc::SolveOptions options = solve_options(cfg);
  Output out(cfg.out_path);
  std::ostream& os = out.get();

  std::vector<int> bounds = cfg.stats_bounds;
  if (bounds.empty())
    for (int k = 0; k <= cfg.max_moves; ++k) bounds.push_back(k);

  os << "K,vars,clauses,encode_ms,solve_ms\n";
  for (int k : bounds) {
    const auto t0 = std::chrono::steady_clock::now();
    const bmc::BoundedEncoding enc = bmc::encode_bounded(game, k, options);
    const double encode_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    double solve_ms = 0;
    if (cfg.stats_solve) {
      const auto t1 = std::chrono::steady_clock::now();
      sat::solve_checked(enc.formula, options.solver);
      solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t1).count();
    }
    os << k << ',' << enc.formula.num_vars() << ',' << enc.formula.num_clauses() << ',' << encode_ms << ','
       << solve_ms << '\n';
  }

  // Encoding time against the length of the action list, at a fixed bound.
  os << "\nnum_actions,encode_ms\n";
  for (std::size_t n = 1; n <= db.actions.size(); ++n) {
    db::GameDatabase cut = db;
    cut.actions.resize(n);
    cut.action_titles.resize(n);
    cut.header.num_actions = static_cast<int>(n) - 1;
    const specialize::SpecializedGame g = specialize::specialize_game(cut);
    bmc::SolveOptions o = options;
    o.goal_lines.reset();
    const auto t0 = std::chrono::steady_clock::now();
    bmc::encode_bounded(g, cfg.sweep_bound, o);
    os << n << ',' << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() << '\n';
  }
  return kExitOk;
}

void report_diagnostics(const std::vector<db::Diagnostic>& diagnostics) {
  for (const db::Diagnostic& d : diagnostics) std::cerr << d.render() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve SAGA adventure games by bounded model checking"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("game", cfg.game_path, "Game database (.dat)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_flag("--prune-placeholders", cfg.prune, "Drop '.' placeholder items, rooms and messages first");
  };
  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("--max-moves", cfg.max_moves, "Largest bound to try")->capture_default_str();
    sub->add_option("--goal-line", cfg.goal_lines, "Only endings on these action lines (-1: built-in dark fall)");
    sub->add_flag("--free-random", cfg.free_random, "Let the solver choose chance outcomes (trace not replay-checked)");
    sub->add_option("--external-solver", cfg.external_solver,
                    "Solver command run as '<cmd> <file.cnf>' (default: $SAGA_EXTERNAL_SOLVER or built-in)");
    sub->add_option("--conflict-budget", cfg.conflict_budget, "Conflicts allowed per bound (-1: unlimited)");
  };

  CLI::App* solve = app.add_subcommand("solve", "Find a shortest input sequence that reaches an ending");
  common(solve);
  solver_flags(solve);
  solve->add_option("--emit-dimacs", cfg.emit_dimacs, "Write the CNF of the last bound tried");
  solve->add_option("-o,--output", cfg.out_path, "Trace file (default: stdout)");

  CLI::App* play = app.add_subcommand("play", "Play interactively on stdin/stdout");
  common(play);

  CLI::App* verify = app.add_subcommand("verify", "Replay a trace and report the ending");
  common(verify);
  verify->add_option("trace", cfg.trace_path, "Trace file")->required();
  verify->add_flag("--raw-lines", cfg.raw_lines, "Interpret packed action lines instead of the specialized IR");

  CLI::App* dump = app.add_subcommand("dump", "Print the specialized program");
  common(dump);
  dump->add_option("--format", cfg.dump_format, "text, tree or dat")
      ->check(CLI::IsMember({"text", "tree", "dat"}))
      ->capture_default_str();
  dump->add_option("-o,--output", cfg.out_path, "Output file (default: stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "Breadth-first search for a shortest ending");
  common(oracle);
  oracle->add_option("--max-depth", cfg.max_depth, "Search depth")->capture_default_str();
  oracle->add_option("--goal-line", cfg.goal_lines, "Only endings on these action lines (-1: built-in dark fall)");
  oracle->add_option("-o,--output", cfg.out_path, "Trace file (default: stdout)");

  CLI::App* stats = app.add_subcommand("stats", "CSV of encoding size and time");
  common(stats);
  solver_flags(stats);
  stats->add_option("--bounds", cfg.stats_bounds, "Bounds to measure (default: 0..max-moves)");
  stats->add_flag("!--no-solve", cfg.stats_solve, "Only encode, skip solving");
  stats->add_option("--sweep-bound", cfg.sweep_bound, "Bound used for the action-count sweep")->capture_default_str();
  stats->add_option("-o,--output", cfg.out_path, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*play) return cmd_play(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*dump) return cmd_dump(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*stats) return cmd_stats(cfg);
  } catch (const db::ParseError& e) {
    std::cerr << cfg.game_path << ": " << e.diagnostic().render() << '\n';
    return kExitInput;
  } catch (const specialize::SpecializeError& e) {
    std::cerr << cfg.game_path << ": invalid game database\n";
    report_diagnostics(e.diagnostics());
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
