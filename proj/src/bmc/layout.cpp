#include <bit>

#include "saga/bmc.hpp"

namespace saga::bmc {

namespace {

int width_for(std::uint64_t max_value) { return static_cast<int>(std::bit_width(max_value)); }

void put(std::vector<bool>& bits, int offset, int width, std::uint64_t value) {
  for (int i = 0; i < width; ++i) bits[static_cast<std::size_t>(offset + i)] = (value >> i) & 1U;
}

std::uint64_t get(const std::vector<bool>& bits, int offset, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i)
    if (bits[static_cast<std::size_t>(offset + i)]) v |= std::uint64_t{1} << i;
  return v;
}

}  // namespace

StateLayout::StateLayout(const SpecializedGame& game) : game_(game) {
  const auto& k = game.constants;
  num_items_ = static_cast<int>(game.initial_locations.size());
  bpl_ = width_for(static_cast<std::uint64_t>(k.carried));
  room_ = bpl_ * num_items_;
  flags_ = room_ + bpl_;
  cc_ = flags_ + specialize::kNumFlags;
  counters_ = cc_ + 16;
  saved_ = counters_ + 16 * specialize::kNumCounters;
  lamp_ = saved_ + bpl_ * specialize::kNumSavedRooms;
  lamp_width_ = k.lamp_item >= 0 && k.light_time > 0 ? width_for(static_cast<std::uint64_t>(k.light_time)) : 0;
  ended_ = lamp_ + lamp_width_;
  ended_width_ = width_for(game.ending_catalog.size());
  total_ = ended_ + ended_width_;
}

std::vector<bool> StateLayout::pack(const GameState& s) const {
  const int carried = game_.constants.carried;
  auto location = [&](int v, const char* what) {
    if (v < 0 || v > carried) throw Error(std::string(what) + " location " + std::to_string(v) + " out of range");
    return static_cast<std::uint64_t>(v);
  };
  if (static_cast<int>(s.item_locations.size()) != num_items_) throw Error("state has the wrong number of items");

  std::vector<bool> bits(static_cast<std::size_t>(total_));
  for (int i = 0; i < num_items_; ++i)
    put(bits, item(i), bpl_, location(s.item_locations[static_cast<std::size_t>(i)], "item"));
  put(bits, room_, bpl_, location(s.current_room, "room"));
  put(bits, flags_, specialize::kNumFlags, s.flags);
  put(bits, cc_, 16, static_cast<std::uint16_t>(s.current_counter));
  for (int c = 0; c < specialize::kNumCounters; ++c)
    put(bits, counter(c), 16, static_cast<std::uint16_t>(s.counters[static_cast<std::size_t>(c)]));
  for (int r = 0; r < specialize::kNumSavedRooms; ++r)
    put(bits, saved_room(r), bpl_, location(s.saved_rooms[static_cast<std::size_t>(r)], "saved room"));

  if (lamp_width_ > 0) {
    if (s.lamp_fuel < 0 || s.lamp_fuel > game_.constants.light_time)
      throw Error("lamp fuel " + std::to_string(s.lamp_fuel) + " out of range");
    put(bits, lamp_, lamp_width_, static_cast<std::uint64_t>(s.lamp_fuel));
  } else if (s.lamp_fuel != game_.constants.light_time) {
    throw Error("lamp fuel " + std::to_string(s.lamp_fuel) + " differs from the fixed light time");
  }

  std::uint64_t ended = 0;
  if (s.ended) {
    if (s.ended->site < 0 || s.ended->site >= static_cast<int>(game_.ending_catalog.size()))
      throw Error("ending site out of range");
    ended = static_cast<std::uint64_t>(s.ended->site) + 1;
  }
  put(bits, ended_, ended_width_, ended);
  return bits;
}

GameState StateLayout::unpack(const std::vector<bool>& bits) const {
  if (static_cast<int>(bits.size()) != total_) throw Error("packed state has the wrong size");
  GameState s;
  s.item_locations.resize(static_cast<std::size_t>(num_items_));
  for (int i = 0; i < num_items_; ++i) s.item_locations[static_cast<std::size_t>(i)] = static_cast<int>(get(bits, item(i), bpl_));
  s.current_room = static_cast<int>(get(bits, room_, bpl_));
  s.flags = static_cast<std::uint32_t>(get(bits, flags_, specialize::kNumFlags));
  s.current_counter = static_cast<std::int16_t>(static_cast<std::uint16_t>(get(bits, cc_, 16)));
  for (int c = 0; c < specialize::kNumCounters; ++c)
    s.counters[static_cast<std::size_t>(c)] = static_cast<std::int16_t>(static_cast<std::uint16_t>(get(bits, counter(c), 16)));
  for (int r = 0; r < specialize::kNumSavedRooms; ++r)
    s.saved_rooms[static_cast<std::size_t>(r)] = static_cast<int>(get(bits, saved_room(r), bpl_));
  s.lamp_fuel = lamp_width_ > 0 ? static_cast<int>(get(bits, lamp_, lamp_width_)) : game_.constants.light_time;

  const auto ended = get(bits, ended_, ended_width_);
  if (ended > game_.ending_catalog.size()) throw Error("packed ending " + std::to_string(ended) + " out of range");
  if (ended != 0) {
    const auto site = static_cast<int>(ended - 1);
    s.ended = engine::Ending{site, game_.ending_catalog[static_cast<std::size_t>(site)].label};
  }
  for (int loc : s.item_locations) s.carried_count += loc == game_.constants.carried ? 1 : 0;
  return s;
}

RandomSchedule precompute_random_schedule(const SpecializedGame& game, std::uint32_t seed, int max_moves) {
  if (game.auto_rng_slots == 0) return {};
  RandomSchedule schedule(static_cast<std::size_t>(max_moves) + 1);
  engine::Rng rng(seed);
  for (auto& row : schedule) {
    for (const auto& line : game.lines) {
      const auto* a = std::get_if<specialize::AutoTrigger>(&line.trigger);
      if (a && a->chance > 0 && a->chance < 100) row.push_back(engine::random_percent(rng, a->chance));
    }
  }
  return schedule;
}

}  // namespace saga::bmc
