#include <cctype>
#include <sstream>

#include "saga/engine.hpp"

namespace saga::engine {

namespace {

// Head index of the first word in 1..n whose significant prefix matches.
std::optional<int> lookup(const std::string& typed, const std::vector<std::string>& words, int word_length) {
  for (std::size_t i = 1; i < words.size(); ++i) {
    const std::string_view w = db::bare_word(words[i]);
    if (w.empty()) continue;
    if (db::words_match(typed, w, word_length)) return static_cast<int>(db::head_word_index(words, i));
  }
  return std::nullopt;
}

std::optional<int> direction_letter(const std::string& word) {
  if (word.size() != 1) return std::nullopt;
  static constexpr std::string_view kLetters = "nsewud";
  const auto pos = kLetters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(word[0]))));
  if (pos == std::string_view::npos) return std::nullopt;
  return static_cast<int>(pos) + 1;
}

}  // namespace

ParsedWords parse_player_words(std::string_view text, const db::GameDatabase& db) {
  std::istringstream in{std::string(text)};
  std::string first, second;
  in >> first >> second;
  if (first.empty()) return {std::nullopt, "Please type a command."};
  const int wl = db.header.word_length;

  if (second.empty()) {
    if (auto dir = direction_letter(first)) return {Move{specialize::kVerbGo, *dir}, {}};
    if (auto verb = lookup(first, db.verbs, wl)) return {Move{*verb, 0}, {}};
    if (auto noun = lookup(first, db.nouns, wl); noun && *noun >= 1 && *noun <= db::kNumDirections)
      return {Move{specialize::kVerbGo, *noun}, {}};
    return {std::nullopt, "You use word(s) I don't know! (\"" + first + "\")"};
  }

  const auto verb = lookup(first, db.verbs, wl);
  if (!verb) return {std::nullopt, "You use word(s) I don't know! (\"" + first + "\")"};
  const auto noun = lookup(second, db.nouns, wl);
  if (!noun) return {std::nullopt, "You use word(s) I don't know! (\"" + second + "\")"};
  return {Move{*verb, *noun}, {}};
}

}  // namespace saga::engine
