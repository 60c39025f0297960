#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "saga/engine.hpp"

namespace saga::engine {

TraceParseError::TraceParseError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

bool parse_number(const std::string& token, long long& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string word_or_dash(const std::vector<std::string>& words, int index) {
  if (index <= 0 || index >= static_cast<int>(words.size())) return "-";
  return std::string(db::bare_word(words[static_cast<std::size_t>(index)]));
}

}  // namespace

TraceFile read_trace(std::istream& in) {
  TraceFile trace;
  bool seen_seed = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    if (tokens[0] == "seed") {
      long long seed = 0;
      if (seen_seed || !trace.moves.empty()) throw TraceParseError(line_no, "seed must come first, once");
      if (tokens.size() != 2 || !parse_number(tokens[1], seed) || seed < 0 || seed > 0xffffffffLL)
        throw TraceParseError(line_no, "expected 'seed <unsigned integer>'");
      trace.seed = static_cast<std::uint32_t>(seed);
      seen_seed = true;
      continue;
    }
    long long verb = 0, noun = 0;
    if (tokens.size() != 2 || !parse_number(tokens[0], verb) || !parse_number(tokens[1], noun) || verb < 0 ||
        noun < 0 || verb > 255 || noun > 255)
      throw TraceParseError(line_no, "expected '<verb index> <noun index>'");
    trace.moves.push_back({static_cast<int>(verb), static_cast<int>(noun)});
  }
  return trace;
}

void write_trace(std::ostream& out, const TraceFile& trace, const db::GameDatabase& db) {
  out << "seed " << trace.seed << '\n';
  for (const Move& m : trace.moves)
    out << m.verb << ' ' << m.noun << "  # " << word_or_dash(db.verbs, m.verb) << ' ' << word_or_dash(db.nouns, m.noun)
        << '\n';
}

}  // namespace saga::engine
