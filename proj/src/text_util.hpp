#pragma once

// Line/word splitting shared by the DIMACS, JT and PACE readers.

#include <string_view>
#include <vector>

namespace pjt::detail {

struct NumberedLine {
  int number; // 1-based
  std::string_view text;
};

inline std::vector<NumberedLine> split_lines(std::string_view text) {
  std::vector<NumberedLine> lines;
  int number = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos)
      break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t')
      ++j;
    if (j > i)
      words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

} // namespace pjt::detail
