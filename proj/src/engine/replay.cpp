#include "saga/engine.hpp"

namespace saga::engine {

ReplayError::ReplayError(int move_index, const std::string& message)
    : Error("move " + std::to_string(move_index) + ": " + message), move_index_(move_index) {}

ReplayReport replay_trace(const SpecializedGame& game, std::uint32_t seed, const std::vector<Move>& moves,
                          LineExecution mode) {
  const Engine engine(game, mode);
  Rng rng(seed);
  ReplayReport report;
  report.final_state = engine.initial_state();
  report.opening_messages = engine.run_initial_automatics(report.final_state, rng).messages;
  if (report.final_state.ended) {
    report.ending = report.final_state.ended;
    report.ending_move = 0;
  }

  for (std::size_t i = 0; i < moves.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    if (report.final_state.ended) throw ReplayError(index, "move after the game has ended");
    TurnResult turn;
    try {
      turn = engine.perform_turn(report.final_state, rng, moves[i].verb, moves[i].noun);
    } catch (const ReplayError&) {
      throw;
    } catch (const Error& e) {
      throw ReplayError(index, e.what());
    }
    report.steps.push_back({moves[i], std::move(turn.messages)});
    if (turn.ending) {
      report.ending = turn.ending;
      report.ending_move = index;
    }
  }
  return report;
}

}  // namespace saga::engine
