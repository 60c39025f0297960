#include "step_check.hpp"

#include <sstream>

namespace saga::testing {

using bmc::StateLayout;
using engine::GameState;
using sat::Lit;

namespace {

std::vector<int> chance_list(const specialize::SpecializedGame& game) {
  std::vector<int> out;
  for (const auto& line : game.lines)
    if (const auto* a = std::get_if<specialize::AutoTrigger>(&line.trigger); a && a->chance > 0 && a->chance < 100)
      out.push_back(a->chance);
  return out;
}

std::string describe(const GameState& s) {
  std::ostringstream out;
  out << "room=" << s.current_room << " flags=" << s.flags << " cc=" << s.current_counter << " lamp=" << s.lamp_fuel
      << " ended=" << (s.ended ? s.ended->label : "-") << " items=";
  for (int l : s.item_locations) out << l << ',';
  out << " counters=";
  for (int c : s.counters) out << c << ',';
  out << " saved=";
  for (int r : s.saved_rooms) out << r << ',';
  return out.str();
}

}  // namespace

std::vector<StepSample> sample_steps(const specialize::SpecializedGame& game, std::mt19937_64& rng, int count,
                                     std::uint32_t seed) {
  const engine::Engine eng(game);
  const int words = game.constants.num_words;
  // Verbs that do something: scripted ones plus the built-ins.
  std::vector<int> verbs = {0, specialize::kVerbGo, specialize::kVerbGet, specialize::kVerbDrop};
  for (const auto& line : game.lines)
    if (const auto* c = std::get_if<specialize::CommandTrigger>(&line.trigger)) verbs.push_back(c->verb);

  std::vector<StepSample> out;
  while (static_cast<int>(out.size()) < count) {
    engine::Rng r(seed);
    GameState s = eng.initial_state();
    eng.run_initial_automatics(s, r);
    const int length = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < length && static_cast<int>(out.size()) < count; ++i) {
      engine::Move m;
      if (rng() % 5 == 0) {
        m = {static_cast<int>(rng() % static_cast<std::uint64_t>(words + 1)),
             static_cast<int>(rng() % static_cast<std::uint64_t>(words + 1))};
      } else {
        m.verb = verbs[rng() % verbs.size()];
        m.noun = static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(words, 12) + 1));
      }
      out.push_back({s, r, m});
      if (s.ended) break;
      eng.perform_turn(s, r, m.verb, m.noun);
    }
  }
  return out;
}

struct StepChecker::Impl {
  explicit Impl(const specialize::SpecializedGame& g)
      : game(g), layout(g), builder(formula), step(bmc::encode_step(builder, g, layout, 0, nullptr)),
        chances(chance_list(g)), solver(formula) {}

  const specialize::SpecializedGame& game;
  StateLayout layout;
  sat::CnfFormula formula;
  bmc::Builder builder;
  bmc::StepEncoding step;
  std::vector<int> chances;
  sat::Solver solver;

  static void fix(std::vector<Lit>& out, const std::vector<Lit>& lits, std::uint64_t value) {
    for (std::size_t i = 0; i < lits.size(); ++i) out.push_back(((value >> i) & 1U) ? lits[i] : -lits[i]);
  }
};

StepChecker::StepChecker(const specialize::SpecializedGame& game) : impl_(std::make_unique<Impl>(game)) {}
StepChecker::~StepChecker() = default;

bool StepChecker::admits_verb(int verb) {
  std::vector<Lit> assume;
  Impl::fix(assume, impl_->step.inputs.verb, static_cast<std::uint64_t>(verb));
  return impl_->solver.solve(assume).status == sat::Status::kSat;
}

std::optional<std::string> StepChecker::check(const StepSample& sample) {
  Impl& m = *impl_;
  std::vector<Lit> assume;
  const std::vector<bool> pre = m.layout.pack(sample.state);
  for (std::size_t i = 0; i < pre.size(); ++i) assume.push_back(pre[i] ? m.step.pre.bits[i] : -m.step.pre.bits[i]);
  Impl::fix(assume, m.step.inputs.verb, static_cast<std::uint64_t>(sample.move.verb));
  Impl::fix(assume, m.step.inputs.noun, static_cast<std::uint64_t>(sample.move.noun));
  engine::Rng draws = sample.rng;
  for (std::size_t j = 0; j < m.chances.size(); ++j) {
    const bool hit = engine::random_percent(draws, m.chances[j]);
    const Lit l = m.step.inputs.random.at(j);
    assume.push_back(hit ? l : -l);
  }

  const sat::SolveResult r = m.solver.solve(assume);
  if (r.status != sat::Status::kSat) return std::string("encoding has no successor: ") + sat::status_name(r.status);
  if (!sat::check_model(m.formula, r.model)) return std::string("model violates the formula");

  GameState expected = sample.state;
  std::optional<int> fired;
  if (!sample.state.ended) {
    engine::Rng rng = sample.rng;
    const engine::Engine eng(m.game);
    const engine::TurnResult t = eng.perform_turn(expected, rng, sample.move.verb, sample.move.noun);
    if (t.ending) fired = t.ending->site;
  }
  GameState got = m.layout.unpack(bmc::read_bits(r, m.step.post.bits));
  expected.turn_index = got.turn_index = 0;
  if (!(got == expected))
    return "post-state differs\n  engine: " + describe(expected) + "\n  solver: " + describe(got);
  for (std::size_t s = 0; s < m.step.fired_endings.size(); ++s) {
    const bool want = fired && *fired == static_cast<int>(s);
    if (r.value(m.step.fired_endings[s]) != want) return "fired ending literal " + std::to_string(s) + " wrong";
  }
  return std::nullopt;
}

}  // namespace saga::testing
