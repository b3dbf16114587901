#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seedwizard/text.hpp"

namespace seedwizard {

/// A word from running text. joined_to_previous is false when anything
/// besides spaces or tabs separates it from the previous word (punctuation,
/// line breaks), which ends phrases.
struct WordToken {
  std::string raw;
  std::string lower;
  std::size_t offset = 0;
  bool joined_to_previous = false;
  bool alphabetic = true;
  std::size_t length = 0;  // in code points
};

/// Splits on every code point that is neither a letter nor an ASCII digit.
inline std::vector<WordToken> tokenize_words(std::string_view s) {
  std::vector<WordToken> tokens;
  WordToken current;
  bool in_word = false;
  bool separator_clean = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t cp = text::next_code_point(s, pos);
    const bool letter = text::is_letter(cp);
    if (letter || text::is_digit(cp)) {
      if (!in_word) {
        current = WordToken{};
        current.offset = start;
        current.joined_to_previous = !tokens.empty() && separator_clean;
        in_word = true;
      }
      current.raw.append(s.substr(start, pos - start));
      text::append_utf8(current.lower, text::to_lower(cp));
      current.alphabetic = current.alphabetic && letter;
      ++current.length;
      continue;
    }
    if (in_word) {
      tokens.push_back(std::move(current));
      in_word = false;
      separator_clean = true;
    }
    if (cp != ' ' && cp != '\t') separator_clean = false;
  }
  if (in_word) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace seedwizard
