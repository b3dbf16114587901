#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "seedwizard/error.hpp"
#include "seedwizard/text.hpp"

namespace seedwizard {

/// Lowercase stopwords. File format: UTF-8, one token per line, '#' starts a
/// comment, blank lines ignored.
class StopwordList {
 public:
  StopwordList() = default;

  static StopwordList parse(std::string_view content) {
    StopwordList list;
    std::size_t pos = 0;
    while (pos <= content.size()) {
      const auto eol = content.find('\n', pos);
      auto line = content.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = text::trim(line);
      if (!line.empty()) list.words_.insert(text::to_lower(line));
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
    return list;
  }

  static StopwordList load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("stopwords", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  bool contains(std::string_view lowercase_word) const {
    return words_.find(std::string(lowercase_word)) != words_.end();
  }

  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace seedwizard
