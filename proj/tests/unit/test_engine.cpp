#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "saga/engine.hpp"

using namespace saga;
using namespace saga::engine;
using saga::testing::add_line;
using saga::testing::pack_vocab;
using saga::testing::skeleton;

namespace {

specialize::SpecializedGame load(const char* name) {
  return specialize::specialize_game(db::load_database(std::string(SAGA_GAMES_DIR) + "/" + name + ".dat"));
}

const std::vector<Move> kTutorialWin = {{1, 1}, {10, 7}, {1, 3}, {10, 9}, {1, 4}, {1, 1}, {4, 10},
                                        {1, 10}, {10, 8}, {1, 2}, {1, 2}, {1, 2}, {18, 8}, {2, 0}};

// Runs the opening pass and then `moves`, returning every message of the last move.
struct Session {
  explicit Session(const specialize::SpecializedGame& g, LineExecution mode = LineExecution::kSpecialized)
      : eng(g, mode), state(eng.initial_state()) {
    opening = eng.run_initial_automatics(state, rng);
  }
  TurnResult turn(int verb, int noun) { return eng.perform_turn(state, rng, verb, noun); }

  Engine eng;
  Rng rng;
  GameState state;
  TurnResult opening;
};

bool has(const TurnResult& r, const std::string& text) {
  return std::find(r.messages.begin(), r.messages.end(), text) != r.messages.end();
}

}  // namespace

TEST_CASE("rng golden values") {
  // state' = (state * 1103515245 + 12345) mod 2^31, computed here in 64 bits.
  const std::uint64_t expect1 = (1979ULL * 1103515245ULL + 12345ULL) % (1ULL << 31);
  const std::uint64_t expect2 = (expect1 * 1103515245ULL + 12345ULL) % (1ULL << 31);
  Rng rng(1979);
  CHECK(rng.next() == expect1);
  CHECK(rng.next() == expect2);

  Rng a(1979);
  CHECK(random_percent(a, 50) == ((expect1 >> 16) % 100 < 50));
  Rng b(1979);
  CHECK(random_percent(b, 0) == false);
  CHECK(b.state() == expect1);
  CHECK(rng_after(1979, 2).state() == expect2);
  CHECK(rng_after(1979, 0).state() == 1979U);

  // Long-run frequency of p=50 draws is close to one half.
  Rng c(12345);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += random_percent(c, 50) ? 1 : 0;
  CHECK(hits > 4700);
  CHECK(hits < 5300);
}

TEST_CASE("tutorial walkthrough reaches the score ending at move 14") {
  const auto game = load("tutorial4");
  for (LineExecution mode : {LineExecution::kSpecialized, LineExecution::kRaw}) {
    const ReplayReport r = replay_trace(game, kDefaultSeed, kTutorialWin, mode);
    REQUIRE(r.ending);
    CHECK(r.ending->label == "L0.E0.score");
    CHECK(r.ending_move == 14);
    CHECK(r.final_state.turn_index == 14);
    CHECK(r.steps.back().messages.back() == "The game is now over.");
  }
}

TEST_CASE("vampire kills a player without the cross") {
  const auto game = load("tutorial4");
  const ReplayReport r = replay_trace(game, kDefaultSeed, {{1, 1}, {1, 1}});
  REQUIRE(r.ending);
  CHECK(r.ending->label == "L5.E1.game_over");
  CHECK(r.ending_move == 2);
  CHECK_THROWS_AS(replay_trace(game, kDefaultSeed, {{1, 1}, {1, 1}, {1, 2}}), ReplayError);
  try {
    replay_trace(game, kDefaultSeed, {{1, 1}, {1, 1}, {1, 2}});
  } catch (const ReplayError& e) {
    CHECK(e.move_index() == 3);
  }
}

TEST_CASE("built-in commands") {
  db::GameDatabase db = skeleton(3, 3, 3);
  db.rooms[1].exits[0] = 2;  // north to 2
  db.rooms[2].exits[1] = 1;
  db.items[1].auto_get = "N7";
  db.items[2].auto_get = "N8";
  db.items[2].initial_location = 2;
  db.items[3].initial_location = 0;
  db.header.max_carry = 1;
  add_line(db, pack_vocab(4, 7), {{8, 1}}, {1});  // needs flag 1, never set
  add_line(db, pack_vocab(6, 0), {}, {2});
  const auto game = specialize::specialize_game(db);
  Session s(game);

  TurnResult r = s.turn(1, 2);
  CHECK(r.messages == std::vector<std::string>{"You can't go in that direction."});
  r = s.turn(1, 1);
  CHECK(s.state.current_room == 2);
  CHECK(r.messages.front() == "O.K.");
  CHECK(has(r, "I'm in a room 2"));
  CHECK(has(r, "Obvious exits: South."));
  CHECK(has(r, "I can also see: item 2"));

  CHECK(s.turn(10, 0).messages == std::vector<std::string>{"What ?"});
  CHECK(s.turn(10, 7).messages == std::vector<std::string>{"It is beyond my power to do that."});
  CHECK(s.turn(10, 8).messages == std::vector<std::string>{"O.K."});
  CHECK(s.state.item_locations[2] == game.constants.carried);
  CHECK(s.state.carried_count == 1);
  s.turn(1, 2);
  CHECK(s.turn(10, 7).messages == std::vector<std::string>{"I've too much to carry."});
  CHECK(s.turn(18, 7).messages == std::vector<std::string>{"It's beyond my power to do that."});
  CHECK(s.turn(18, 8).messages == std::vector<std::string>{"O.K."});
  CHECK(s.state.item_locations[2] == 1);
  CHECK(s.state.carried_count == 0);

  CHECK(s.turn(4, 7).messages == std::vector<std::string>{"I can't do that yet."});
  CHECK(s.turn(4, 8).messages == std::vector<std::string>{"I don't understand your command."});
  CHECK(s.turn(6, 3).messages == std::vector<std::string>{"m2"});
  CHECK(s.turn(5, 7).messages == std::vector<std::string>{"I don't understand your command."});
  CHECK_THROWS_AS(s.turn(19, 0), Error);
  CHECK_THROWS_AS(s.turn(0, -1), Error);
}

TEST_CASE("scripted GO lines run before the built-in move") {
  db::GameDatabase db = skeleton(2, 1, 2);
  db.rooms[1].exits[0] = 2;
  add_line(db, pack_vocab(1, 1), {{8, 3}}, {1});  // GO NORTH while flag 3 is set
  add_line(db, pack_vocab(0, 100), {{0, 3}}, {58});  // sets flag 3 on every pass
  const auto game = specialize::specialize_game(db);
  Session s(game);
  CHECK(s.state.flag(3));
  const TurnResult r = s.turn(1, 1);
  CHECK(r.messages == std::vector<std::string>{"m1"});
  CHECK(s.state.current_room == 1);
}

TEST_CASE("darkness, the lamp and falling") {
  db::GameDatabase db = skeleton(3, 9, 2);
  db.header.light_time = 3;
  db.rooms[1].exits[0] = 2;
  db.rooms[2].exits[1] = 1;
  db.items[9].description = "lamp";
  db.items[9].auto_get = "N9";
  db.items[9].initial_location = 1;
  db.items[1].initial_location = 2;
  db.header.max_carry = 10;
  add_line(db, pack_vocab(0, 100), {}, {56});  // dark everywhere
  add_line(db, pack_vocab(4, 0), {}, {69});          // refill
  const auto game = specialize::specialize_game(db);
  REQUIRE(game.constants.lamp_item == 9);

  SUBCASE("no lamp: room description withheld, moving kills") {
    Session s(game);
    TurnResult r = s.turn(1, 1);
    CHECK(has(r, "I can't see. It is too dark!"));
    CHECK_FALSE(has(r, "I can also see: item 1"));
    r = s.turn(1, 3);
    CHECK(r.messages == std::vector<std::string>{"Dangerous to move in the dark!", "I fell down and broke my neck."});
    REQUIRE(r.ending);
    CHECK(r.ending->label == "builtin.dark_fall");
  }
  SUBCASE("an exit still works in the dark") {
    Session s(game);
    s.turn(1, 1);
    const TurnResult r = s.turn(1, 2);
    CHECK(r.messages.front() == "Dangerous to move in the dark!");
    CHECK(s.state.current_room == 1);
    CHECK_FALSE(r.ending);
  }
  SUBCASE("carried lamp lights the way and burns out") {
    Session s(game);
    s.turn(10, 9);  // fuel 3 -> 2
    CHECK(s.state.lamp_fuel == 2);
    TurnResult r = s.turn(1, 1);  // -> 1
    CHECK(has(r, "I can also see: item 1"));
    r = s.turn(5, 0);  // -> 0
    CHECK(has(r, "Your light has run out."));
    CHECK(s.state.lamp_fuel == 0);
    CHECK(s.state.flag(specialize::kDarkFlag));
    // An empty lamp at hand still counts as a light source.
    CHECK_FALSE(s.eng.is_dark(s.state));
    r = s.turn(5, 0);
    CHECK(s.state.lamp_fuel == 0);
    s.turn(1, 2);
    s.turn(4, 0);  // refilled to 3, then this turn's tick
    CHECK(s.state.lamp_fuel == 2);
    CHECK(s.state.item_locations[9] == game.constants.carried);
  }
  SUBCASE("lamp burns only while carried or in the player's room") {
    Session s(game);
    s.turn(1, 1);
    CHECK(s.state.lamp_fuel == 3);
    s.turn(1, 2);
    CHECK(s.state.lamp_fuel == 2);
  }
}

TEST_CASE("counters, continuation and score") {
  db::GameDatabase db = skeleton(2, 2, 4);
  db.items[1].description = "*gem*";
  db.header.num_treasures = 1;
  db.header.treasure_room = 1;
  db.items[1].initial_location = 1;
  // verb 4: counter = 5, then continuation line prints the counter
  add_line(db, pack_vocab(4, 0), {{0, 5}}, {79, 73});
  add_line(db, pack_vocab(0, 0), {{15, 5}}, {78, 2});
  add_line(db, pack_vocab(0, 0), {}, {3});
  add_line(db, pack_vocab(5, 0), {}, {77, 78});
  add_line(db, pack_vocab(6, 0), {{0, 9}}, {83, 78});
  add_line(db, pack_vocab(7, 0), {}, {65});
  add_line(db, pack_vocab(8, 0), {}, {4});  // separated from continuations by a command line
  const auto game = specialize::specialize_game(db);

  for (LineExecution mode : {LineExecution::kSpecialized, LineExecution::kRaw}) {
    Session s(game, mode);
    CHECK(s.turn(4, 0).messages == std::vector<std::string>{"5", "m2", "m3"});
    CHECK(s.turn(5, 0).messages == std::vector<std::string>{"4"});
    CHECK(s.turn(6, 0).messages == std::vector<std::string>{"-1"});
    const TurnResult r = s.turn(7, 0);
    CHECK(r.messages == std::vector<std::string>{"I've stored 1 treasures.  On a scale of 0 to 100, that rates 100.",
                                                 "Well done.", "The game is now over."});
    REQUIRE(r.ending);
    CHECK(r.ending->label == "L5.E0.score");
    CHECK_THROWS_AS(s.turn(8, 0), Error);
  }
}

TEST_CASE("automatics consume draws after the game ends") {
  db::GameDatabase db = skeleton(2, 1, 2);
  add_line(db, pack_vocab(4, 0), {}, {63});
  add_line(db, pack_vocab(0, 50), {}, {1});
  add_line(db, pack_vocab(0, 30), {}, {2});
  const auto game = specialize::specialize_game(db);
  CHECK(game.auto_rng_slots == 2);
  Session s(game);
  CHECK(s.rng == rng_after(kDefaultSeed, 2));
  const TurnResult r = s.turn(4, 0);
  CHECK(r.ending);
  CHECK(s.rng == rng_after(kDefaultSeed, 4));
  CHECK(r.messages == std::vector<std::string>{"The game is now over."});
}

TEST_CASE("chance lines follow the generator") {
  db::GameDatabase db = skeleton(2, 1, 2);
  add_line(db, pack_vocab(0, 50), {}, {1});
  const auto game = specialize::specialize_game(db);
  Rng oracle(kDefaultSeed);
  Session s(game);
  CHECK(has(s.opening, "m1") == random_percent(oracle, 50));
  for (int i = 0; i < 20; ++i) CHECK(has(s.turn(0, 0), "m1") == random_percent(oracle, 50));
}

TEST_CASE("player words") {
  const auto game = load("tutorial4");
  auto parse = [&](const char* text) { return parse_player_words(text, game.db); };
  CHECK(parse("go north").move == Move{1, 1});
  CHECK(parse("GO NOR").move == Move{1, 1});
  CHECK(parse("n").move == Move{1, 1});
  CHECK(parse("d").move == Move{1, 6});
  CHECK(parse("north").move == Move{1, 1});
  CHECK(parse("score").move == Move{2, 0});
  CHECK(parse("get key").move == Move{10, 7});
  CHECK(parse("inv").move == Move{3, 0});
  CHECK(parse("  ").error == "Please type a command.");
  CHECK(parse("dance").error == "You use word(s) I don't know! (\"dance\")");
  CHECK(parse("get banana").error == "You use word(s) I don't know! (\"banana\")");
}

TEST_CASE("trace files") {
  const auto game = load("tutorial4");
  std::ostringstream out;
  write_trace(out, {42, {{1, 1}, {10, 7}, {2, 0}}}, game.db);
  CHECK(out.str() == "seed 42\n1 1  # GO NORTH\n10 7  # GET KEY\n2 0  # SCORE -\n");
  std::istringstream in(out.str());
  const TraceFile back = read_trace(in);
  CHECK(back.seed == 42);
  CHECK(back.moves == std::vector<Move>{{1, 1}, {10, 7}, {2, 0}});

  std::istringstream plain("# comment\n\n 4 10\n");
  const TraceFile t = read_trace(plain);
  CHECK(t.seed == kDefaultSeed);
  CHECK(t.moves == std::vector<Move>{{4, 10}});

  auto error_line = [](const std::string& text) {
    std::istringstream s(text);
    try {
      read_trace(s);
    } catch (const TraceParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("1 1\nseed 3\n") == 2);
  CHECK(error_line("seed 1\nseed 2\n") == 2);
  CHECK(error_line("1 1\n2 x\n") == 2);
  CHECK(error_line("1 1\n\n1 256\n") == 3);
  CHECK(error_line("1\n") == 1);
  CHECK(error_line("1 1 1\n") == 1);
}
