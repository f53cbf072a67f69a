#pragma once

// Line/token helpers shared by the text formats.

#include <cstddef>
#include <string_view>
#include <vector>

namespace ddr::text {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::string_view text;  // comment stripped
  std::size_t number;     // 1-based
};

std::vector<Line> lines(std::string_view document);
std::vector<Token> tokens(std::string_view line);

/// If `line` starts with `keyword` (after leading blanks) returns the
/// remainder and its column offset.
bool consume_keyword(std::string_view line, std::string_view keyword,
                     std::string_view& rest, std::size_t& rest_offset);

}  // namespace ddr::text
