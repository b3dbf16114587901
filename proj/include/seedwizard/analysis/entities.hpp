#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "seedwizard/analysis/types.hpp"
#include "seedwizard/text.hpp"

namespace seedwizard {

namespace entity_detail {

struct Token {
  std::string_view raw;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool capitalized = false;
  bool all_caps = false;
  bool sentence_initial = false;
  bool joined_to_previous = false;  // only spaces/tabs since the previous token
};

template <std::size_t N>
bool in(const std::array<std::string_view, N>& list, std::string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

// Lowercase words allowed inside a name ("University of Hamburg").
inline constexpr std::array<std::string_view, 8> kInfixes = {"of", "for", "von", "van", "de", "del", "der", "du"};

// Capitalized only because they open a sentence.
inline constexpr std::array<std::string_view, 24> kLeadingFunctionWords = {
    "The", "A", "An", "This", "That", "These", "Those", "In", "On", "At", "For", "From",
    "By", "With", "After", "Before", "During", "According", "Since", "Der", "Die", "Das", "Ein", "Eine"};

inline constexpr std::array<std::string_view, 44> kOrganizationCues = {
    "Organization", "Organisation", "Institute",  "Institut",    "University",  "Universität", "Agency",
    "Association",  "Foundation",   "Ministry",   "Committee",   "Council",     "Corporation", "Company",
    "Inc",          "Ltd",          "GmbH",       "Bank",        "Party",       "Union",       "Centre",
    "Center",       "Centers",      "Society",    "Department",  "Office",      "Commission",  "Nations",
    "Fund",         "Programme",    "Program",    "Hospital",    "Clinic",      "Cross",       "Bureau",
    "Authority",    "Service",      "College",    "Academy",     "Laboratory",  "Alliance",    "Federation",
    "Frontières",   "Borders"};

inline constexpr std::array<std::string_view, 20> kLocationCues = {
    "Republic", "Kingdom", "City",   "River",  "Mount",    "Island", "Islands", "County", "Province", "States",
    "Street",   "Lake",    "Valley", "Coast",  "Sea",      "Ocean",  "Gulf",    "District", "Region", "Territory"};

inline constexpr std::array<std::string_view, 40> kPlaces = {
    "Africa",  "Europe",   "Asia",     "America", "Guinea",   "Liberia",  "Sierra",   "Leone",
    "Nigeria", "Senegal",  "Mali",     "Congo",   "Zaire",    "Sudan",    "Uganda",   "Gabon",
    "Germany", "Hamburg",  "Berlin",   "Hanover", "Hannover", "France",   "Spain",    "Ukraine",
    "Russia",  "Kiev",     "Kyiv",     "Crimea",  "Texas",    "Dallas",   "Madrid",   "London",
    "Paris",   "Geneva",   "Atlanta",  "Kinshasa", "Conakry", "Monrovia", "Freetown", "Lagos"};

inline constexpr std::array<std::string_view, 10> kPersonTitles = {
    "Dr", "Mr", "Mrs", "Ms", "Prof", "Professor", "President", "Minister", "Sir", "Dame"};

inline constexpr std::array<std::string_view, 24> kGivenNames = {
    "Robert", "Peter",  "John",   "Thomas", "Michael", "David",   "James", "William",
    "Mary",   "Anna",   "Maria",  "Angela", "Barack",  "Vladimir", "Margaret", "Elizabeth",
    "Gerhard", "Elena", "Hans",   "Klaus",  "Paul",    "Frank",   "Kent",  "Anthony"};

inline bool word_char(char32_t cp) { return text::is_letter(cp) || text::is_digit(cp); }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> tokens;
  bool sentence_start = true;
  bool clean_gap = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t cp = text::next_code_point(s, pos);
    if (!word_char(cp)) {
      if (cp == '.' || cp == '!' || cp == '?' || cp == '\n' || cp == ':') sentence_start = true;
      if (cp != ' ' && cp != '\t') clean_gap = false;
      continue;
    }
    // Word: letters/digits with single inner hyphens.
    std::size_t end = pos;
    bool upper_first = text::is_upper(cp);
    bool all_caps = upper_first;
    std::size_t letters = text::is_letter(cp) ? 1 : 0;
    while (end < s.size()) {
      std::size_t probe = end;
      char32_t c = text::next_code_point(s, probe);
      if (c == '-' && probe < s.size()) {
        std::size_t after = probe;
        if (!word_char(text::next_code_point(s, after))) break;
        end = probe;
        continue;
      }
      if (!word_char(c)) break;
      if (text::is_letter(c)) {
        ++letters;
        if (!text::is_upper(c)) all_caps = false;
      }
      end = probe;
    }
    Token t;
    t.raw = s.substr(start, end - start);
    t.begin = start;
    t.end = end;
    t.capitalized = upper_first;
    t.all_caps = all_caps && letters >= 2;
    t.sentence_initial = sentence_start;
    t.joined_to_previous = !tokens.empty() && clean_gap;
    tokens.push_back(t);
    pos = end;
    sentence_start = false;
    clean_gap = true;
  }
  return tokens;
}

inline EntityType classify(const std::vector<std::string_view>& words, bool titled) {
  for (auto w : words)
    if (in(kOrganizationCues, w)) return EntityType::ORGANIZATION;
  for (auto w : words)
    if (in(kLocationCues, w)) return EntityType::LOCATION;
  if (std::all_of(words.begin(), words.end(), [](std::string_view w) { return in(kPlaces, w); }))
    return EntityType::LOCATION;
  if (titled || (words.size() >= 2 && words.size() <= 3 && in(kGivenNames, words.front())))
    return EntityType::PERSON;
  return EntityType::OTHER;
}

// "(ABC)" right after position end, separated by spaces only.
inline std::string_view acronym_after(std::string_view s, std::size_t end, std::size_t& close) {
  std::size_t i = end;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  if (i >= s.size() || s[i] != '(') return {};
  const auto rp = s.find(')', i);
  if (rp == std::string_view::npos || rp - i - 1 < 2 || rp - i - 1 > 10) return {};
  const auto inner = s.substr(i + 1, rp - i - 1);
  int upper = 0;
  for (char c : inner) {
    if (c >= 'A' && c <= 'Z') ++upper;
    else if (!(c >= '0' && c <= '9')) return {};
  }
  if (upper < 2) return {};
  close = rp + 1;
  return inner;
}

}  // namespace entity_detail

/// Rule-based named entity extraction. Maximal runs of capitalized words
/// (allowing "of"-style infixes) become entities; a run that is only a
/// sentence-opening word is ignored. A directly following "(ACRONYM)" is
/// kept as the entity's alias. Types come from cue words and a small
/// gazetteer. Results are unique by label, in order of first appearance.
inline std::vector<Entity> extract_entities(std::string_view text) {
  using namespace entity_detail;
  const auto tokens = tokenize(text);
  std::vector<Entity> found;
  std::vector<std::size_t> consumed_acronyms;  // token begin offsets

  auto is_consumed = [&](std::size_t begin) {
    return std::find(consumed_acronyms.begin(), consumed_acronyms.end(), begin) != consumed_acronyms.end();
  };

  for (std::size_t i = 0; i < tokens.size();) {
    if (!tokens[i].capitalized || is_consumed(tokens[i].begin)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && tokens[j].joined_to_previous) {
      if (tokens[j].capitalized && !tokens[j].sentence_initial) {
        ++j;
      } else if (in(kInfixes, tokens[j].raw) && j + 1 < tokens.size() && tokens[j + 1].joined_to_previous &&
                 tokens[j + 1].capitalized) {
        j += 2;
      } else {
        break;
      }
    }
    std::size_t first = i;
    bool titled = false;
    while (first < j && tokens[first].sentence_initial && in(kLeadingFunctionWords, tokens[first].raw)) ++first;
    if (first < j && j - first > 1 && in(kPersonTitles, tokens[first].raw)) {
      titled = true;
      ++first;
    }
    const std::size_t last = j;
    i = j;
    if (first >= last) continue;
    const bool lone = last - first == 1;
    if (lone && tokens[first].sentence_initial) continue;
    if (lone && text::code_point_count(tokens[first].raw) < 2) continue;

    Entity e;
    e.surface = std::string(text.substr(tokens[first].begin, tokens[last - 1].end - tokens[first].begin));
    std::vector<std::string_view> words;
    for (std::size_t k = first; k < last; ++k) words.push_back(tokens[k].raw);
    e.type = classify(words, titled);
    e.label = text::normalize_whitespace(e.surface);
    e.origin = EntityOrigin::extracted;
    std::size_t close = 0;
    if (const auto alias = acronym_after(text, tokens[last - 1].end, close); !alias.empty()) {
      e.alias = std::string(alias);
      for (const auto& t : tokens)
        if (t.begin > tokens[last - 1].end && t.end <= close) consumed_acronyms.push_back(t.begin);
    }

    auto same = std::find_if(found.begin(), found.end(), [&](const Entity& x) { return x.label == e.label; });
    if (same == found.end()) {
      found.push_back(std::move(e));
    } else if (same->alias.empty()) {
      same->alias = e.alias;
    }
  }

  // A bare acronym that already names an entity is the same entity.
  std::vector<Entity> out;
  for (const auto& e : found) {
    const bool is_alias = std::any_of(found.begin(), found.end(),
                                      [&](const Entity& other) { return &other != &e && other.alias == e.label; });
    if (!is_alias) out.push_back(e);
  }
  return out;
}

}  // namespace seedwizard
