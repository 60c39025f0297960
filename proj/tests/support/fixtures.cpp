#include "fixtures.hpp"

#include <stdexcept>

namespace saga::testing {

db::GameDatabase skeleton(int num_rooms, int num_items, int num_messages) {
  db::GameDatabase db;
  auto& h = db.header;
  h.num_items = num_items;
  h.num_actions = -1;
  h.num_words = 18;
  h.num_rooms = num_rooms;
  h.max_carry = 5;
  h.player_room = 1;
  h.treasure_room = 1;
  h.word_length = 3;
  h.light_time = -1;
  h.num_messages = num_messages;
  const char* const dirs[] = {"ANY", "NORTH", "SOUTH", "EAST", "WEST", "UP", "DOWN"};
  for (int w = 0; w <= h.num_words; ++w) {
    db.verbs.push_back(w == 0 ? "AUT" : w == 1 ? "GO" : w == 10 ? "GET" : w == 18 ? "DROP" : "");
    db.nouns.push_back(w <= 6 ? dirs[w] : "N" + std::to_string(w));
  }
  for (int r = 0; r <= num_rooms; ++r) db.rooms.push_back({{}, r == 0 ? "" : "room " + std::to_string(r)});
  for (int m = 0; m <= num_messages; ++m) db.messages.push_back("m" + std::to_string(m));
  for (int i = 0; i <= num_items; ++i) db.items.push_back({"item " + std::to_string(i), 1, std::nullopt});
  db.trailer = {1, 0, 0};
  return db;
}

void add_line(db::GameDatabase& db, int vocab, const std::vector<std::pair<int, int>>& conditions,
              const std::vector<int>& acts) {
  if (conditions.size() > 5 || acts.size() > 4) throw std::invalid_argument("too many slots");
  db::RawAction a;
  a.vocab = vocab;
  for (std::size_t i = 0; i < conditions.size(); ++i)
    a.conditions[i] = pack_condition(conditions[i].first, conditions[i].second);
  int padded[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < acts.size(); ++i) padded[i] = acts[i];
  a.actions = {pack_acts(padded[0], padded[1]), pack_acts(padded[2], padded[3])};
  db.actions.push_back(a);
  db.action_titles.emplace_back();
  db.header.num_actions = static_cast<int>(db.actions.size()) - 1;
}

void set_verb(db::GameDatabase& db, int index, std::string word) { db.verbs.at(static_cast<std::size_t>(index)) = std::move(word); }
void set_noun(db::GameDatabase& db, int index, std::string word) { db.nouns.at(static_cast<std::size_t>(index)) = std::move(word); }

}  // namespace saga::testing
