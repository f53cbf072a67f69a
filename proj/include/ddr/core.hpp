#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/error.hpp"

namespace ddr {

/// A generator index raised to +1 or -1.
struct Letter {
  int gen = 0;
  int sign = 1;

  Letter inverse() const { return {gen, -sign}; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Generator indices into a presentation's generator list.
using GeneratorSet = std::set<int>;

Word inverse(const Word& w);

/// Cyclic rotation that starts at position `start`.
Word rotate(const Word& w, std::size_t start);

bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

GeneratorSet support(const Word& w);

class Presentation {
 public:
  Presentation() = default;

  /// Validates names (identifier syntax, uniqueness), letter ranges, and
  /// rejects empty relators.
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  std::size_t generator_count() const { return generators_.size(); }
  std::size_t relator_count() const { return relators_.size(); }

  const std::string& name(int gen) const { return generators_.at(gen); }
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

bool is_valid_identifier(std::string_view name);

Presentation parse_presentation(std::string_view text);
std::string serialize(const Presentation& p);

/// Whitespace separated tokens `g`, `g^-1`, `g^k` resolved against `p`.
Word parse_word(std::string_view text, const Presentation& p);
std::string format_word(const Word& w, const Presentation& p);

enum class ReductionMode { Free, Cyclic };

Word normalize_word(const Word& w, ReductionMode mode);

struct WordStats {
  std::map<int, int> exponent_sum;
  int total_exponent_sum = 0;
  std::optional<std::size_t> proper_power_period;
  GeneratorSet support;
  std::map<int, int> occurrences;
};

WordStats word_stats(const Word& w);

/// Relator indices of `p` whose support lies inside `s`, in order.
std::vector<std::size_t> relators_over(const Presentation& p,
                                       const GeneratorSet& s);

/// P_S: generators S (in P's order) and the relators carried by S.
Presentation subpresentation(const Presentation& p, const GeneratorSet& s);

/// Generators occurring exactly once across all relators.
GeneratorSet free_edge_generators(const Presentation& p);

GeneratorSet all_generators(const Presentation& p);
bool is_proper_subset(const GeneratorSet& s, const Presentation& p);

/// Comma separated generator names; empty text is the empty set.
GeneratorSet parse_generator_set(std::string_view csv, const Presentation& p);
std::string format_generator_set(const GeneratorSet& s, const Presentation& p);

void require_cyclically_reduced(const Presentation& p);
void require_proper(const GeneratorSet& s, const Presentation& p);
void require_generators(const GeneratorSet& s, const Presentation& p);

/// One x_i h_i block of a relative relator: a letter over the new
/// generators followed by a word over the base generators representing h_i.
struct TemplateSegment {
  Letter letter;
  Word coefficient;
};

struct RelativePresentationData {
  Presentation base;
  std::vector<std::string> new_generators;
  std::vector<std::vector<TemplateSegment>> templates;
};

/// Ordinary presentation on base + new generators: the base relators
/// followed by one relator per template with every h_i replaced by its word.
Presentation inflate_relative(const RelativePresentationData& data);

}  // namespace ddr
