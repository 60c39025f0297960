#include <algorithm>

#include "saga/bmc.hpp"

namespace saga::bmc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

GameState opening_state(const SpecializedGame& game, std::uint32_t seed) {
  const engine::Engine eng(game);
  engine::Rng rng(seed);
  GameState s = eng.initial_state();
  eng.run_initial_automatics(s, rng);
  return s;
}

bool in_goals(const std::vector<int>& goals, const std::optional<engine::Ending>& e) {
  return e && std::find(goals.begin(), goals.end(), e->site) != goals.end();
}

// Compares everything the packed state carries.
bool same_packed(GameState a, GameState b) {
  a.turn_index = b.turn_index = 0;
  return a == b;
}

}  // namespace

std::vector<int> goal_sites(const SpecializedGame& game, const std::optional<std::set<int>>& goal_lines) {
  std::vector<int> sites;
  for (std::size_t s = 0; s < game.ending_catalog.size(); ++s)
    if (!goal_lines || goal_lines->count(game.ending_catalog[s].line_index)) sites.push_back(static_cast<int>(s));
  if (goal_lines && sites.empty()) throw Error("no ending site matches the requested goal lines");
  return sites;
}

BoundedEncoding encode_bounded(const SpecializedGame& game, int k, const SolveOptions& options) {
  BoundedEncoding enc;
  Builder b(enc.formula);
  const StateLayout layout(game);
  const std::vector<int> goals = goal_sites(game, options.goal_lines);
  const GameState initial = opening_state(game, options.seed);
  const RandomSchedule schedule =
      options.free_random ? RandomSchedule{} : precompute_random_schedule(game, options.seed, k);

  std::vector<Lit> goal_lits{sat::from_bool(in_goals(goals, initial.ended))};
  for (int step = 0; step < k; ++step) {
    const std::vector<bool>* row = nullptr;
    if (!options.free_random && !schedule.empty()) row = &schedule[static_cast<std::size_t>(step) + 1];
    StepEncoding e = encode_step(b, game, layout, step, row);
    if (step == 0)
      constrain_state(enc.formula, e.pre, layout.pack(initial));
    else
      tie_states(b, enc.steps.back().post, e.pre);
    for (int site : goals) goal_lits.push_back(e.fired_endings[static_cast<std::size_t>(site)]);
    enc.steps.push_back(std::move(e));
  }
  enc.goal = b.or_any(goal_lits);
  enc.formula.add_clause({enc.goal});
  return enc;
}

SolveResult solve_bounded(const SpecializedGame& game, const SolveOptions& options) {
  if (options.max_moves < 0) throw Error("max moves must be >= 0");
  const std::vector<int> goals = goal_sites(game, options.goal_lines);
  const StateLayout layout(game);
  const engine::Engine eng(game);
  SolveResult result;

  for (int k = 0; k <= options.max_moves; ++k) {
    BoundStats st;
    st.k = k;
    auto t0 = Clock::now();
    const BoundedEncoding enc = encode_bounded(game, k, options);
    st.encode_ms = ms_since(t0);
    st.vars = enc.formula.num_vars();
    st.clauses = enc.formula.num_clauses();

    t0 = Clock::now();
    const sat::SolveResult sr = sat::solve_checked(enc.formula, options.solver);
    st.solve_ms = ms_since(t0);
    st.status = sr.status;
    result.stats.push_back(st);
    result.bound = k;

    if (sr.status == sat::Status::kUnknown) {
      result.outcome = Outcome::kUnknown;
      return result;
    }
    if (sr.status == sat::Status::kUnsat) continue;

    result.outcome = Outcome::kTrace;
    for (const StepEncoding& step : enc.steps)
      result.moves.push_back({static_cast<int>(read_unsigned(sr, step.inputs.verb)),
                              static_cast<int>(read_unsigned(sr, step.inputs.noun))});

    if (options.free_random) {
      const GameState last = layout.unpack(read_bits(sr, enc.steps.empty() ? std::vector<Lit>{} : enc.steps.back().post.bits));
      if (last.ended) result.ending_label = last.ended->label;
      result.verified = false;
      return result;
    }

    // Replay in the engine, checking every decoded state on the way.
    engine::Rng rng(options.seed);
    GameState state = eng.initial_state();
    eng.run_initial_automatics(state, rng);
    for (std::size_t i = 0; i < enc.steps.size(); ++i) {
      const GameState decoded_pre = layout.unpack(read_bits(sr, enc.steps[i].pre.bits));
      if (!same_packed(decoded_pre, state))
        throw InternalError("encoder disagrees with engine before move " + std::to_string(i + 1));
      eng.perform_turn(state, rng, result.moves[i].verb, result.moves[i].noun);
      const GameState decoded_post = layout.unpack(read_bits(sr, enc.steps[i].post.bits));
      if (!same_packed(decoded_post, state))
        throw InternalError("encoder disagrees with engine after move " + std::to_string(i + 1));
    }
    const engine::ReplayReport replay = engine::replay_trace(game, options.seed, result.moves);
    if (!in_goals(goals, replay.ending) || replay.ending_move != k)
      throw InternalError("solver trace does not reach a goal ending at move " + std::to_string(k) + " on replay");
    result.ending_label = replay.ending->label;
    result.verified = true;
    return result;
  }
  result.outcome = Outcome::kExhausted;
  return result;
}

}  // namespace saga::bmc
