#pragma once

// Single-step agreement between the engine and the transition encoding:
// one formula per game, with the pre-state, inputs and draws fixed through
// solver assumptions for each sampled pair.

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "saga/bmc.hpp"

namespace saga::testing {

struct StepSample {
  engine::GameState state;
  engine::Rng rng;
  engine::Move move;
};

/// Random walks from the opening state. Ended states are included so the
/// absorbing behaviour gets exercised too.
std::vector<StepSample> sample_steps(const specialize::SpecializedGame& game, std::mt19937_64& rng, int count,
                                     std::uint32_t seed = engine::kDefaultSeed);

class StepChecker {
 public:
  explicit StepChecker(const specialize::SpecializedGame& game);
  ~StepChecker();

  /// Empty when the solver's post-state and fired endings equal the engine's.
  std::optional<std::string> check(const StepSample& sample);
  /// True when the encoding admits an out-of-range verb (it must not).
  bool admits_verb(int verb);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace saga::testing
