#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilhom/block_pattern.hpp"

namespace nilhom {

/// Parse failure with a precise location (1-based line and column).
struct SpecParseError : std::runtime_error {
  SpecParseError(int line_, int col_, const std::string& message_)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ": " + message_),
        line(line_), col(col_), message(message_) {}

  int line;
  int col;
  std::string message;
};

/**
 * A group-spec file: line-oriented `key = value` pairs, `#` comments.
 * Keys: `blocks` (space-separated positive integers), `kinds`
 * (space-separated `id`|`sl`, same count), `prime` (optional prime).
 * Unknown and duplicate keys are rejected.
 */
struct SpecFile {
  std::vector<int> blocks;
  std::vector<std::string> kinds; // "id" | "sl"
  std::optional<Int> prime;

  friend bool operator==(const SpecFile&, const SpecFile&) = default;

  BlockPattern to_pattern() const {
    BlockPattern p;
    p.sizes = blocks;
    for (const std::string& k : kinds)
      p.kinds.push_back(k == "sl" ? BlockKind::SL : BlockKind::Identity);
    p.prime = prime;
    p.validate();
    return p;
  }

  std::string serialize() const {
    std::string out = "blocks =";
    for (int b : blocks) out += " " + std::to_string(b);
    out += "\nkinds =";
    for (const std::string& k : kinds) out += " " + k;
    out += "\n";
    if (prime) out += "prime = " + prime->str() + "\n";
    return out;
  }
};

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string text;
  int col; // 1-based column of the first character
};

inline std::vector<Token> tokenize(const std::string& s, int base_col) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) break;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    out.push_back({s.substr(start, i - start), base_col + static_cast<int>(start)});
  }
  return out;
}

} // namespace detail

inline SpecFile parse_spec(const std::string& text) {
  SpecFile spec;
  bool have_blocks = false, have_kinds = false, have_prime = false;
  int blocks_line = 0, kinds_line = 0;
  int line_no = 0;
  std::size_t pos = 0;
  int last_line = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    last_line = line_no;

    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t first = 0;
    while (first < line.size() && detail::is_space(line[first])) ++first;
    if (first == line.size()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecParseError(line_no, static_cast<int>(first) + 1, "expected 'key = value'");
    std::size_t key_end = eq;
    while (key_end > first && detail::is_space(line[key_end - 1])) --key_end;
    std::string key = line.substr(first, key_end - first);
    int key_col = static_cast<int>(first) + 1;
    std::vector<detail::Token> values =
        detail::tokenize(line.substr(eq + 1), static_cast<int>(eq) + 2);

    if (key == "blocks") {
      if (have_blocks) throw SpecParseError(line_no, key_col, "duplicate key 'blocks'");
      have_blocks = true;
      blocks_line = line_no;
      if (values.empty())
        throw SpecParseError(line_no, static_cast<int>(eq) + 2, "blocks: expected at least one size");
      for (const auto& t : values) {
        int v = 0;
        try {
          std::size_t used = 0;
          v = std::stoi(t.text, &used);
          if (used != t.text.size()) throw std::invalid_argument("");
        } catch (...) {
          throw SpecParseError(line_no, t.col, "blocks: '" + t.text + "' is not an integer");
        }
        if (v < 1)
          throw SpecParseError(line_no, t.col, "blocks: sizes must be positive");
        spec.blocks.push_back(v);
      }
    } else if (key == "kinds") {
      if (have_kinds) throw SpecParseError(line_no, key_col, "duplicate key 'kinds'");
      have_kinds = true;
      kinds_line = line_no;
      if (values.empty())
        throw SpecParseError(line_no, static_cast<int>(eq) + 2, "kinds: expected at least one kind");
      for (const auto& t : values) {
        if (t.text != "id" && t.text != "sl")
          throw SpecParseError(line_no, t.col, "kinds: '" + t.text + "' is not 'id' or 'sl'");
        spec.kinds.push_back(t.text);
      }
    } else if (key == "prime") {
      if (have_prime) throw SpecParseError(line_no, key_col, "duplicate key 'prime'");
      have_prime = true;
      if (values.size() != 1)
        throw SpecParseError(line_no, static_cast<int>(eq) + 2, "prime: expected exactly one value");
      Int p;
      try {
        for (char c : values[0].text)
          if (c < '0' || c > '9') throw std::invalid_argument("");
        p = Int(values[0].text);
      } catch (...) {
        throw SpecParseError(line_no, values[0].col,
                             "prime: '" + values[0].text + "' is not a positive integer");
      }
      if (!is_prime(p))
        throw SpecParseError(line_no, values[0].col, "prime: " + values[0].text + " is not prime");
      spec.prime = p;
    } else {
      throw SpecParseError(line_no, key_col, "unknown key '" + key + "'");
    }
  }

  if (!have_blocks) throw SpecParseError(last_line, 1, "missing required key 'blocks'");
  if (!have_kinds) throw SpecParseError(last_line, 1, "missing required key 'kinds'");
  if (spec.blocks.size() != spec.kinds.size())
    throw SpecParseError(std::max(blocks_line, kinds_line), 1,
                         "blocks lists " + std::to_string(spec.blocks.size()) +
                             " sizes but kinds lists " + std::to_string(spec.kinds.size()));
  return spec;
}

} // namespace nilhom
