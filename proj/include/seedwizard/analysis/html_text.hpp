#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "seedwizard/text.hpp"

namespace seedwizard {

struct ExtractedText {
  std::string title;
  std::string text;  // paragraphs separated by a blank line
};

namespace html_detail {

inline char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == ':';
}

inline bool is_block(std::string_view tag) {
  static constexpr std::array<std::string_view, 38> kBlock = {
      "address", "article", "aside",  "blockquote", "body",   "br",      "caption", "dd",
      "details", "div",     "dl",     "dt",         "figcaption", "figure", "footer", "form",
      "h1",      "h2",      "h3",     "h4",         "h5",     "h6",      "header",  "hr",
      "html",    "li",      "main",   "nav",        "ol",     "p",       "pre",     "section",
      "summary", "table",   "td",     "th",         "tr",     "ul"};
  for (auto b : kBlock)
    if (b == tag) return true;
  return false;
}

// Elements whose content is never visible text.
inline bool is_raw_hidden(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "noscript" || tag == "template" || tag == "svg" ||
         tag == "iframe" || tag == "object";
}

inline std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size() && match; ++k) match = lower(hay[i + k]) == needle[k];
    if (match) return i;
  }
  return std::string_view::npos;
}

// Position just past the '>' closing a tag that starts at pos, honoring
// quoted attribute values.
inline std::size_t tag_end(std::string_view html, std::size_t pos) {
  char quote = 0;
  for (std::size_t i = pos; i < html.size(); ++i) {
    const char c = html[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i + 1;
    }
  }
  return html.size();
}

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

inline constexpr std::array<NamedEntity, 44> kEntities = {{
    {"amp", '&'},       {"lt", '<'},         {"gt", '>'},         {"quot", '"'},       {"apos", '\''},
    {"nbsp", ' '},      {"copy", 0xA9},      {"reg", 0xAE},       {"trade", 0x2122},   {"ndash", 0x2013},
    {"mdash", 0x2014},  {"hellip", 0x2026},  {"laquo", 0xAB},     {"raquo", 0xBB},     {"lsquo", 0x2018},
    {"rsquo", 0x2019},  {"ldquo", 0x201C},   {"rdquo", 0x201D},   {"bdquo", 0x201E},   {"sbquo", 0x201A},
    {"bull", 0x2022},   {"middot", 0xB7},    {"times", 0xD7},     {"deg", 0xB0},       {"euro", 0x20AC},
    {"auml", 0xE4},     {"ouml", 0xF6},      {"uuml", 0xFC},      {"Auml", 0xC4},      {"Ouml", 0xD6},
    {"Uuml", 0xDC},     {"szlig", 0xDF},     {"eacute", 0xE9},    {"egrave", 0xE8},    {"Eacute", 0xC9},
    {"aacute", 0xE1},   {"agrave", 0xE0},    {"ccedil", 0xE7},    {"iacute", 0xED},    {"oacute", 0xF3},
    {"uacute", 0xFA},   {"ntilde", 0xF1},    {"shy", 0xAD},       {"thinsp", ' '},
}};

}  // namespace html_detail

/// Replaces character references (&amp; &#233; &#xE9; and common named
/// ones). Unknown references are left as written.
inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    const auto ref = s.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (ref.size() > 1 && ref[0] == '#') {
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const auto digits = ref.substr(hex ? 2 : 1);
      char32_t cp = 0;
      bool valid = !digits.empty();
      for (char c : digits) {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        if (v < 0 || cp > 0x10FFFF) {
          valid = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + v;
      }
      if (valid) {
        if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = text::kReplacement;
        text::append_utf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& e : html_detail::kEntities) {
        if (e.name == ref) {
          if (e.cp != 0xAD) text::append_utf8(out, e.cp);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

/// Converts raw page bytes to UTF-8. Latin-1 style declarations are
/// transcoded; everything else is treated as UTF-8 with bad bytes replaced.
inline std::string decode_document(std::string_view bytes, std::string_view declared_encoding) {
  const auto enc = text::to_lower(declared_encoding);
  if (enc == "iso-8859-1" || enc == "latin1" || enc == "latin-1" || enc == "windows-1252" ||
      enc == "cp1252" || enc == "iso-8859-15")
    return text::latin1_to_utf8(bytes);
  return text::sanitize_utf8(bytes);
}

/// Visible text of an HTML document. Scripts, styles and comments are
/// dropped, block elements become paragraph breaks, whitespace collapses,
/// and the title element supplies the title. Never fails on malformed input.
inline ExtractedText extract_text(std::string_view raw_html, std::string_view declared_encoding = "") {
  using namespace html_detail;
  const std::string html = decode_document(raw_html, declared_encoding);
  const std::string_view doc = html;

  ExtractedText out;
  std::string paragraph;
  auto flush = [&] {
    auto p = text::normalize_whitespace(decode_entities(paragraph));
    paragraph.clear();
    if (p.empty()) return;
    if (!out.text.empty()) out.text += "\n\n";
    out.text += p;
  };

  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] != '<') {
      const auto next = doc.find('<', i);
      const auto end = next == std::string_view::npos ? doc.size() : next;
      paragraph.append(doc.substr(i, end - i));
      i = end;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const auto close = doc.find("-->", i + 4);
      i = close == std::string_view::npos ? doc.size() : close + 3;
      continue;
    }
    if (i + 1 < doc.size() && (doc[i + 1] == '!' || doc[i + 1] == '?')) {
      i = tag_end(doc, i + 1);
      continue;
    }
    std::size_t p = i + 1;
    const bool closing = p < doc.size() && doc[p] == '/';
    if (closing) ++p;
    std::string name;
    while (p < doc.size() && is_name_char(doc[p])) name.push_back(lower(doc[p++]));
    if (name.empty()) {
      // A stray '<' is text.
      paragraph.push_back('<');
      ++i;
      continue;
    }
    i = tag_end(doc, p);
    if (closing) {
      if (is_block(name)) flush();
      continue;
    }
    const bool self_closing = i >= 2 && doc[i - 2] == '/';
    if (name == "title" && !self_closing) {
      const auto close = find_ci(doc, "</title", i);
      const auto end = close == std::string_view::npos ? doc.size() : close;
      if (out.title.empty()) out.title = text::normalize_whitespace(decode_entities(doc.substr(i, end - i)));
      i = close == std::string_view::npos ? doc.size() : tag_end(doc, close);
      continue;
    }
    if (is_raw_hidden(name) && !self_closing) {
      const auto close = find_ci(doc, "</" + name, i);
      i = close == std::string_view::npos ? doc.size() : tag_end(doc, close);
      continue;
    }
    if (is_block(name)) flush();
  }
  flush();
  return out;
}

}  // namespace seedwizard
