#pragma once

// Random, always-valid game databases for differential and cross-check tests.

#include <random>

#include "saga/dbformat.hpp"

namespace saga::testing {

struct GameShape {
  int max_rooms = 6;    // room entries, room 0 included
  int max_items = 8;    // item entries
  int min_actions = 1;
  int max_actions = 20;
  int num_words = 18;   // must be >= 18 for GET/DROP to exist
  bool every_opcode = true;   // draw effects from the whole opcode table
  bool chance_lines = true;   // automatic lines with 1..99% chance
  int placeholder_percent = 0;  // '.' descriptions for items/rooms/messages
  bool exact_sizes = false;     // use max_rooms/max_items as the entry counts
};

db::GameDatabase random_game(std::mt19937_64& rng, const GameShape& shape);

}  // namespace saga::testing
