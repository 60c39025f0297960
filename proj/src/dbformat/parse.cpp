#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "saga/dbformat.hpp"

namespace saga::db {

std::string Diagnostic::render() const {
  std::string out = offset ? std::to_string(*offset) : std::string("-");
  out += ':';
  out += field;
  out += ':';
  out += message;
  return out;
}

ParseError::ParseError(Diagnostic diagnostic)
    : Error(diagnostic.render()), diagnostic_(std::move(diagnostic)) {}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::size_t next_token() {
    skip_space();
    return pos_;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& field, const std::string& message) const {
    throw ParseError(Diagnostic{at, field, message});
  }

  int read_int(const std::string& field) {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail(start, field, "truncated input, expected integer");
    std::size_t end = pos_;
    if (text_[end] == '-' || text_[end] == '+') ++end;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
        text_[end] != '"')
      fail(start, field, "expected integer");
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, text_.data() + end, value);
    if (ec == std::errc::result_out_of_range) fail(start, field, "integer out of range");
    if (ec != std::errc() || ptr != text_.data() + end) fail(start, field, "expected integer");
    pos_ = end;
    return value;
  }

  std::string read_string(const std::string& field) {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) fail(start, field, "truncated input, expected string");
    if (text_[pos_] != '"') fail(start, field, "expected '\"'");
    const std::size_t close = text_.find('"', pos_ + 1);
    if (close == std::string_view::npos) fail(start, field, "unterminated string");
    std::string value(text_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return value;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Item split_item_text(std::string text, int location) {
  Item item;
  item.initial_location = location;
  const std::size_t slash = text.find('/');
  if (slash != std::string::npos) {
    std::string_view rest = std::string_view(text).substr(slash);
    if (rest != "//" && rest != "/*") {
      std::string_view word = rest.substr(1);
      word = word.substr(0, word.find('/'));
      if (!word.empty()) {
        item.auto_get = std::string(word);
        item.description = text.substr(0, slash);
        return item;
      }
    }
  }
  item.description = std::move(text);
  return item;
}

std::string indexed(const char* list, std::size_t i, const char* member = nullptr) {
  std::string s = std::string(list) + "[" + std::to_string(i) + "]";
  if (member) {
    s += '.';
    s += member;
  }
  return s;
}

}  // namespace

GameDatabase parse_database(std::string_view text) {
  Reader in(text);
  GameDatabase db;
  GameHeader& h = db.header;

  h.reserved = in.read_int("header.reserved");
  auto count = [&](int& dst, const char* name) {
    const std::size_t at = in.next_token();
    dst = in.read_int(std::string("header.") + name);
    if (dst < 0) in.fail(at, std::string("header.") + name, "count must be >= 0");
  };
  count(h.num_items, "num_items");
  count(h.num_actions, "num_actions");
  count(h.num_words, "num_words");
  count(h.num_rooms, "num_rooms");
  count(h.max_carry, "max_carry");
  std::size_t player_room_at = in.next_token();
  h.player_room = in.read_int("header.player_room");
  count(h.num_treasures, "num_treasures");
  std::size_t word_length_at = in.next_token();
  h.word_length = in.read_int("header.word_length");
  h.light_time = in.read_int("header.light_time");
  count(h.num_messages, "num_messages");
  std::size_t treasure_room_at = in.next_token();
  h.treasure_room = in.read_int("header.treasure_room");

  if (h.player_room < 0 || h.player_room > h.num_rooms)
    in.fail(player_room_at, "header.player_room", "room index out of range");
  if (h.treasure_room < 0 || h.treasure_room > h.num_rooms)
    in.fail(treasure_room_at, "header.treasure_room", "room index out of range");
  if (h.word_length < 1) in.fail(word_length_at, "header.word_length", "must be >= 1");

  for (int i = 0; i <= h.num_actions; ++i) {
    RawAction a;
    a.vocab = in.read_int(indexed("actions", i, "vocab"));
    for (std::size_t c = 0; c < a.conditions.size(); ++c)
      a.conditions[c] = in.read_int(indexed("actions", i, "conditions"));
    for (std::size_t c = 0; c < a.actions.size(); ++c)
      a.actions[c] = in.read_int(indexed("actions", i, "actions"));
    db.actions.push_back(a);
  }

  for (int i = 0; i <= h.num_words; ++i) {
    db.verbs.push_back(in.read_string(indexed("words", i, "verb")));
    db.nouns.push_back(in.read_string(indexed("words", i, "noun")));
  }

  for (int i = 0; i <= h.num_rooms; ++i) {
    Room room;
    for (std::size_t d = 0; d < room.exits.size(); ++d) {
      const std::size_t at = in.next_token();
      const std::string field = indexed("rooms", i, "exits");
      room.exits[d] = in.read_int(field);
      if (room.exits[d] < 0 || room.exits[d] > h.num_rooms)
        in.fail(at, field, "exit room index out of range");
    }
    room.description = in.read_string(indexed("rooms", i, "description"));
    db.rooms.push_back(std::move(room));
  }

  for (int i = 0; i <= h.num_messages; ++i) db.messages.push_back(in.read_string(indexed("messages", i)));

  for (int i = 0; i <= h.num_items; ++i) {
    std::string text = in.read_string(indexed("items", i, "description"));
    const std::size_t at = in.next_token();
    const int location = in.read_int(indexed("items", i, "location"));
    if (location != kCarriedExternal && (location < 0 || location > h.num_rooms))
      in.fail(at, indexed("items", i, "location"), "location out of range");
    db.items.push_back(split_item_text(std::move(text), location));
  }

  for (int i = 0; i <= h.num_actions; ++i) db.action_titles.push_back(in.read_string(indexed("titles", i)));

  // Historical files carry two or three trailing integers.
  db.trailer[0] = in.read_int("trailer[0]");
  db.trailer[1] = in.read_int("trailer[1]");
  if (!in.at_end()) db.trailer[2] = in.read_int("trailer[2]");
  return db;
}

GameDatabase load_database(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_database(buffer.str());
}

std::string serialize_database(const GameDatabase& db) {
  std::ostringstream out;
  const GameHeader& h = db.header;
  for (int v : {h.reserved, h.num_items, h.num_actions, h.num_words, h.num_rooms, h.max_carry,
                h.player_room, h.num_treasures, h.word_length, h.light_time, h.num_messages,
                h.treasure_room})
    out << v << '\n';
  for (const RawAction& a : db.actions) {
    out << a.vocab;
    for (int c : a.conditions) out << ' ' << c;
    for (int c : a.actions) out << ' ' << c;
    out << '\n';
  }
  for (std::size_t i = 0; i < db.verbs.size(); ++i) {
    out << '"' << db.verbs[i] << "\"\n";
    out << '"' << (i < db.nouns.size() ? db.nouns[i] : std::string()) << "\"\n";
  }
  for (const Room& r : db.rooms) {
    for (std::size_t d = 0; d < r.exits.size(); ++d) out << (d ? " " : "") << r.exits[d];
    out << "\n\"" << r.description << "\"\n";
  }
  for (const std::string& m : db.messages) out << '"' << m << "\"\n";
  for (const Item& item : db.items) {
    out << '"' << item.description;
    if (item.auto_get) out << '/' << *item.auto_get << '/';
    out << "\" " << item.initial_location << '\n';
  }
  for (const std::string& t : db.action_titles) out << '"' << t << "\"\n";
  for (int v : db.trailer) out << v << '\n';
  return out.str();
}

std::size_t head_word_index(const std::vector<std::string>& words, std::size_t index) {
  while (index > 0 && index < words.size() && !words[index].empty() && words[index].front() == '*')
    --index;
  return index;
}

std::string_view bare_word(std::string_view word) {
  if (!word.empty() && word.front() == '*') word.remove_prefix(1);
  return word;
}

bool words_match(std::string_view a, std::string_view b, int significant) {
  for (int i = 0; i < significant; ++i) {
    const char ca = i < static_cast<int>(a.size()) ? a[i] : '\0';
    const char cb = i < static_cast<int>(b.size()) ? b[i] : '\0';
    if (std::tolower(static_cast<unsigned char>(ca)) != std::tolower(static_cast<unsigned char>(cb)))
      return false;
    if (ca == '\0') return true;
  }
  return true;
}

}  // namespace saga::db
