#include "ddr/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "text.hpp"

namespace ddr {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word rotate(const Word& w, std::size_t start) {
  if (w.empty()) return w;
  start %= w.size();
  Word out(w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i + 1] == w[i].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != w.back().inverse();
}

GeneratorSet support(const Word& w) {
  GeneratorSet s;
  for (auto l : w) s.insert(l.gen);
  return s;
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<std::string_view> seen;
  for (const auto& g : generators_) {
    if (!is_valid_identifier(g)) {
      throw Error(ErrorCode::InvalidName, "invalid generator name '" + g + "'");
    }
    if (!seen.insert(g).second) {
      throw Error(ErrorCode::DuplicateGenerator, "generator '" + g + "' declared twice");
    }
  }
  const int n = static_cast<int>(generators_.size());
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    if (relators_[i].empty()) {
      throw Error(ErrorCode::EmptyRelator, "relator " + std::to_string(i) + " is empty");
    }
    for (auto l : relators_[i]) {
      if (l.gen < 0 || l.gen >= n || (l.sign != 1 && l.sign != -1)) {
        throw Error(ErrorCode::UndeclaredGenerator,
                    "relator " + std::to_string(i) + " uses an undeclared letter");
      }
    }
  }
}

std::optional<int> Presentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int Presentation::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UndeclaredGenerator,
              "undeclared generator '" + std::string(name) + "'");
}

namespace {

// Expands one `g`, `g^-1` or `g^k` token. `lookup` maps a name to an index or
// nullopt; errors carry the token's column.
template <typename Lookup>
void expand_token(const text::Token& tok, std::size_t line, std::size_t offset,
                  Lookup&& lookup, Word& out) {
  auto body = tok.text;
  int exponent = 1;
  if (auto caret = body.find('^'); caret != std::string_view::npos) {
    auto exp_text = body.substr(caret + 1);
    body = body.substr(0, caret);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (exp_text.empty() || ec != std::errc() || ptr != exp_text.data() + exp_text.size()) {
      throw ParseError(line, offset + tok.column + caret + 1,
                       "malformed exponent in '" + std::string(tok.text) + "'");
    }
    if (exponent == 0) {
      throw ParseError(line, offset + tok.column + caret + 1, "exponent must be nonzero");
    }
  }
  auto gen = lookup(body);
  if (!gen) {
    throw ParseError(line, offset + tok.column,
                     "undeclared generator '" + std::string(body) + "'",
                     ErrorCode::UndeclaredGenerator);
  }
  const int sign = exponent > 0 ? 1 : -1;
  for (int k = 0; k < std::abs(exponent); ++k) out.push_back({*gen, sign});
}

}  // namespace

Presentation parse_presentation(std::string_view document) {
  std::optional<std::vector<std::string>> gens;
  std::vector<std::pair<text::Line, std::size_t>> rel_lines;
  std::size_t gens_line = 0;

  for (const auto& line : text::lines(document)) {
    std::string_view rest;
    std::size_t offset = 0;
    if (text::consume_keyword(line.text, "gens:", rest, offset)) {
      if (gens) {
        throw ParseError(line.number, offset - 4,
                         "duplicate gens: line (first on line " + std::to_string(gens_line) + ")");
      }
      gens.emplace();
      gens_line = line.number;
      for (const auto& tok : text::tokens(rest)) {
        if (!is_valid_identifier(tok.text)) {
          throw ParseError(line.number, offset + tok.column,
                           "invalid generator name '" + std::string(tok.text) + "'",
                           ErrorCode::InvalidName);
        }
        if (std::find(gens->begin(), gens->end(), tok.text) != gens->end()) {
          throw ParseError(line.number, offset + tok.column,
                           "generator '" + std::string(tok.text) + "' declared twice",
                           ErrorCode::DuplicateGenerator);
        }
        gens->emplace_back(tok.text);
      }
    } else if (text::consume_keyword(line.text, "rel:", rest, offset)) {
      rel_lines.push_back({{rest, line.number}, offset});
    } else if (!text::tokens(line.text).empty()) {
      auto first = text::tokens(line.text).front();
      throw ParseError(line.number, first.column,
                       "expected 'gens:' or 'rel:', found '" + std::string(first.text) + "'");
    }
  }
  if (!gens) throw ParseError(1, 1, "missing gens: line");

  auto lookup = [&](std::string_view name) -> std::optional<int> {
    for (std::size_t i = 0; i < gens->size(); ++i) {
      if ((*gens)[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
  };
  std::vector<Word> relators;
  for (const auto& [line, offset] : rel_lines) {
    Word w;
    for (const auto& tok : text::tokens(line.text)) {
      expand_token(tok, line.number, offset, lookup, w);
    }
    if (w.empty()) {
      throw ParseError(line.number, offset, "empty relator", ErrorCode::EmptyRelator);
    }
    relators.push_back(std::move(w));
  }
  return Presentation(std::move(*gens), std::move(relators));
}

std::string format_word(const Word& w, const Presentation& p) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += p.name(w[i].gen);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

std::string serialize(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& g : p.generators()) out += " " + g;
  out += '\n';
  for (const auto& r : p.relators()) out += "rel: " + format_word(r, p) + '\n';
  return out;
}

Word parse_word(std::string_view text_in, const Presentation& p) {
  Word w;
  for (const auto& tok : text::tokens(text_in)) {
    expand_token(tok, 1, 0, [&](std::string_view n) { return p.find(n); }, w);
  }
  return w;
}

Word normalize_word(const Word& w, ReductionMode mode) {
  Word stack;
  for (auto l : w) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  if (mode == ReductionMode::Free) return stack;
  std::size_t lo = 0;
  std::size_t hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == stack[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(stack.begin() + static_cast<std::ptrdiff_t>(lo),
              stack.begin() + static_cast<std::ptrdiff_t>(hi));
}

WordStats word_stats(const Word& w) {
  WordStats s;
  for (auto l : w) {
    s.exponent_sum[l.gen] += l.sign;
    s.total_exponent_sum += l.sign;
    s.occurrences[l.gen] += 1;
    s.support.insert(l.gen);
  }
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < n && periodic; ++i) periodic = w[i] == w[(i + d) % n];
    if (periodic) {
      s.proper_power_period = d;
      break;
    }
  }
  return s;
}

std::vector<std::size_t> relators_over(const Presentation& p, const GeneratorSet& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    const auto& r = p.relators()[i];
    if (std::all_of(r.begin(), r.end(), [&](Letter l) { return s.count(l.gen) > 0; })) {
      out.push_back(i);
    }
  }
  return out;
}

void require_generators(const GeneratorSet& s, const Presentation& p) {
  for (int g : s) {
    if (g < 0 || g >= static_cast<int>(p.generator_count())) {
      throw Error(ErrorCode::UndeclaredGenerator,
                  "generator index " + std::to_string(g) + " is not declared");
    }
  }
}

Presentation subpresentation(const Presentation& p, const GeneratorSet& s) {
  require_generators(s, p);
  std::vector<int> remap(p.generator_count(), -1);
  std::vector<std::string> names;
  for (int g : s) {
    remap[g] = static_cast<int>(names.size());
    names.push_back(p.name(g));
  }
  std::vector<Word> relators;
  for (auto i : relators_over(p, s)) {
    Word w;
    for (auto l : p.relators()[i]) w.push_back({remap[l.gen], l.sign});
    relators.push_back(std::move(w));
  }
  return Presentation(std::move(names), std::move(relators));
}

GeneratorSet free_edge_generators(const Presentation& p) {
  std::vector<int> count(p.generator_count(), 0);
  for (const auto& r : p.relators()) {
    for (auto l : r) ++count[l.gen];
  }
  GeneratorSet out;
  for (std::size_t g = 0; g < count.size(); ++g) {
    if (count[g] == 1) out.insert(static_cast<int>(g));
  }
  return out;
}

GeneratorSet all_generators(const Presentation& p) {
  GeneratorSet s;
  for (std::size_t g = 0; g < p.generator_count(); ++g) s.insert(static_cast<int>(g));
  return s;
}

bool is_proper_subset(const GeneratorSet& s, const Presentation& p) {
  return s.size() < p.generator_count();
}

GeneratorSet parse_generator_set(std::string_view csv, const Presentation& p) {
  GeneratorSet s;
  while (!csv.empty()) {
    auto comma = csv.find(',');
    auto item = csv.substr(0, comma);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) s.insert(p.index_of(item));
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return s;
}

std::string format_generator_set(const GeneratorSet& s, const Presentation& p) {
  std::string out = "{";
  bool first = true;
  for (int g : s) {
    if (!first) out += ",";
    out += p.name(g);
    first = false;
  }
  return out + "}";
}

void require_cyclically_reduced(const Presentation& p) {
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    if (!is_cyclically_reduced(p.relators()[i])) {
      throw Error(ErrorCode::NotCyclicallyReduced,
                  "relator " + std::to_string(i) + " (" + format_word(p.relators()[i], p) +
                      ") is not cyclically reduced");
    }
  }
}

void require_proper(const GeneratorSet& s, const Presentation& p) {
  require_generators(s, p);
  if (!is_proper_subset(s, p)) {
    throw Error(ErrorCode::SNotProper, "S must be a proper subset of the generators");
  }
}

Presentation inflate_relative(const RelativePresentationData& data) {
  const auto& base = data.base;
  const int offset = static_cast<int>(base.generator_count());
  std::vector<std::string> names = base.generators();
  for (const auto& g : data.new_generators) {
    if (base.find(g)) {
      throw Error(ErrorCode::NameCollision,
                  "new generator '" + g + "' collides with a base generator");
    }
    names.push_back(g);
  }
  std::vector<Word> relators = base.relators();
  const int new_count = static_cast<int>(data.new_generators.size());
  for (std::size_t t = 0; t < data.templates.size(); ++t) {
    Word w;
    for (const auto& seg : data.templates[t]) {
      if (seg.letter.gen < 0 || seg.letter.gen >= new_count) {
        throw Error(ErrorCode::UndeclaredGenerator,
                    "template " + std::to_string(t) + " references an undeclared new generator");
      }
      w.push_back({seg.letter.gen + offset, seg.letter.sign});
      for (auto l : seg.coefficient) {
        if (l.gen < 0 || l.gen >= offset) {
          throw Error(ErrorCode::UndeclaredGenerator,
                      "template " + std::to_string(t) + " coefficient leaves the base generators");
        }
        w.push_back(l);
      }
    }
    if (w.empty()) {
      throw Error(ErrorCode::EmptyRelator, "template " + std::to_string(t) + " is empty");
    }
    relators.push_back(std::move(w));
  }
  return Presentation(std::move(names), std::move(relators));
}

}  // namespace ddr
