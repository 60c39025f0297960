#include <algorithm>
#include <unordered_set>

#include "saga/bmc.hpp"

namespace saga::bmc {

std::optional<std::vector<Move>> bfs_oracle(const SpecializedGame& game, const OracleOptions& options) {
  const engine::Engine eng(game);
  const StateLayout layout(game);
  const std::vector<int> goals = goal_sites(game, options.goal_lines);
  auto is_goal = [&](const GameState& s) {
    return s.ended && std::find(goals.begin(), goals.end(), s.ended->site) != goals.end();
  };

  struct Node {
    GameState state;
    int parent;
    Move move;
  };
  std::vector<Node> nodes;
  auto path_to = [&](int index) {
    std::vector<Move> moves;
    for (; nodes[static_cast<std::size_t>(index)].parent >= 0; index = nodes[static_cast<std::size_t>(index)].parent)
      moves.push_back(nodes[static_cast<std::size_t>(index)].move);
    std::reverse(moves.begin(), moves.end());
    return moves;
  };

  engine::Rng rng(options.seed);
  GameState start = eng.initial_state();
  eng.run_initial_automatics(start, rng);
  if (start.ended) return is_goal(start) ? std::optional<std::vector<Move>>(std::vector<Move>{}) : std::nullopt;

  // With chance draws the rng position depends on the turn number, so states
  // are only merged within one depth.
  const bool per_depth = game.auto_rng_slots > 0;
  std::unordered_set<std::vector<bool>> seen{layout.pack(start)};
  nodes.push_back({start, -1, {}});
  std::vector<int> frontier{0};
  const int words = game.constants.num_words;

  for (int depth = 0; depth < options.max_depth && !frontier.empty(); ++depth) {
    const engine::Rng turn_rng =
        engine::rng_after(options.seed, static_cast<std::int64_t>(depth + 1) * game.auto_rng_slots);
    if (per_depth) seen.clear();
    std::vector<int> next;
    for (int index : frontier) {
      for (int verb = 0; verb <= words; ++verb) {
        for (int noun = 0; noun <= words; ++noun) {
          GameState s = nodes[static_cast<std::size_t>(index)].state;
          engine::Rng r = turn_rng;
          eng.perform_turn(s, r, verb, noun);
          if (s.ended) {
            if (!is_goal(s)) continue;
            nodes.push_back({std::move(s), index, {verb, noun}});
            return path_to(static_cast<int>(nodes.size()) - 1);
          }
          if (!seen.insert(layout.pack(s)).second) continue;
          nodes.push_back({std::move(s), index, {verb, noun}});
          next.push_back(static_cast<int>(nodes.size()) - 1);
          if (nodes.size() > options.state_budget) throw Error("oracle state budget exhausted");
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace saga::bmc
