#pragma once

// Hand-built databases for unit tests. Packing here is written straight from
// the file format so it stays independent of the decoder under test.

#include <string>
#include <utility>
#include <vector>

#include "saga/dbformat.hpp"

namespace saga::testing {

inline int pack_vocab(int verb, int noun) { return 150 * verb + noun; }
inline int pack_condition(int opcode, int param) { return 20 * param + opcode; }
inline int pack_acts(int a, int b) { return 150 * a + b; }

/// 18 words: GO at verb 1, GET at 10, DROP at 18; nouns 1..6 are directions,
/// 7.. are "N7", "N8", ... Rooms 1..num_rooms have no exits; items sit in
/// room 1 with no auto-get word; messages read "m<index>".
db::GameDatabase skeleton(int num_rooms, int num_items, int num_messages);

/// Appends a line. `conditions` are (opcode, param) pairs, at most five;
/// `acts` holds up to four effect numbers.
void add_line(db::GameDatabase& db, int vocab, const std::vector<std::pair<int, int>>& conditions,
              const std::vector<int>& acts);

/// Sets the verb (or noun) word at an index.
void set_verb(db::GameDatabase& db, int index, std::string word);
void set_noun(db::GameDatabase& db, int index, std::string word);

}  // namespace saga::testing
