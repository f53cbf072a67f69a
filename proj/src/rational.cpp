#include "ddr/rational.hpp"

#include <cctype>

#include "ddr/error.hpp"

namespace ddr {

Rational parse_rational(std::string_view text) {
  auto ok = !text.empty();
  int slashes = 0;
  for (std::size_t i = 0; i < text.size() && ok; ++i) {
    char c = text[i];
    if (c == '/') {
      ++slashes;
      ok = slashes == 1 && i > 0 && i + 1 < text.size();
    } else if (c == '-' || c == '+') {
      ok = i == 0 || text[i - 1] == '/';
    } else {
      ok = std::isdigit(static_cast<unsigned char>(c)) != 0;
    }
  }
  Rational q;
  if (!ok || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace ddr
