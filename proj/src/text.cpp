#include "text.hpp"

#include <cctype>

namespace ddr::text {

namespace {
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
}  // namespace

std::vector<Line> lines(std::string_view document) {
  std::vector<Line> out;
  std::size_t number = 1;
  while (true) {
    auto end = document.find('\n');
    auto line = document.substr(0, end);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    out.push_back({line, number});
    if (end == std::string_view::npos) break;
    document.remove_prefix(end + 1);
    ++number;
  }
  return out;
}

std::vector<Token> tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool consume_keyword(std::string_view line, std::string_view keyword,
                     std::string_view& rest, std::size_t& rest_offset) {
  std::size_t i = 0;
  while (i < line.size() && is_blank(line[i])) ++i;
  if (line.substr(i, keyword.size()) != keyword) return false;
  rest_offset = i + keyword.size();
  rest = line.substr(rest_offset);
  return true;
}

}  // namespace ddr::text
