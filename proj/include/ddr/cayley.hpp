#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/core.hpp"

namespace ddr {

/// Right action of generators and inverses on group elements; element 0 is
/// the identity. Column 2*gen is x, column 2*gen+1 is x^-1.
class GroupTable {
 public:
  /// Validates that every column is a permutation, that inverse columns are
  /// mutually inverse and that every relator acts trivially; otherwise throws
  /// INCONSISTENT_TABLE.
  GroupTable(const Presentation& p, std::vector<std::vector<int>> action);

  std::size_t element_count() const { return action_.size(); }
  std::size_t generator_count() const { return generators_; }
  int act(int element, Letter l) const { return action_[element][2 * l.gen + (l.sign < 0 ? 1 : 0)]; }
  int act(int element, const Word& w) const;
  const std::vector<std::vector<int>>& action() const { return action_; }

 private:
  std::size_t generators_ = 0;
  std::vector<std::vector<int>> action_;
};

inline constexpr std::size_t kDefaultCosetLimit = 100'000;

/// Coset enumeration of the trivial subgroup (HLT with coincidence handling,
/// fixed scan order). nullopt when more than `limit` cosets would be needed;
/// that says nothing about finiteness.
std::optional<GroupTable> coset_enumeration(const Presentation& p, std::size_t limit = kDefaultCosetLimit);

/// Edge (g, x) runs from g to g*x; its key is g * generator_count + x.
struct TwoCell {
  int element = 0;
  std::size_t relator = 0;
  std::vector<std::int64_t> boundary;  // edge keys with multiplicity
};

struct CayleyComplex {
  std::size_t vertex_count = 0;
  std::size_t generator_count = 0;
  std::vector<TwoCell> cells;

  std::size_t edge_count() const { return vertex_count * generator_count; }
  int edge_generator(std::int64_t key) const { return static_cast<int>(key % static_cast<std::int64_t>(generator_count)); }
  int edge_element(std::int64_t key) const { return static_cast<int>(key / static_cast<std::int64_t>(generator_count)); }
};

/// Cells (g, r) ordered by g, then by relator index.
CayleyComplex build_cayley_complex(const GroupTable& t, const Presentation& p);

/// The subcomplex spanned by the listed cells (indices into `x.cells`).
CayleyComplex restrict_cells(const CayleyComplex& x, const std::vector<std::size_t>& cells);

/// `table <element> <generator> <image>` and `cell <element> <relator>` lines.
/// Cell boundaries are traced through the partial table.
CayleyComplex parse_subcomplex(std::string_view text, const Presentation& p);

struct CollapseStep {
  std::size_t cell = 0;
  std::int64_t edge = 0;
};

struct CollapseLog {
  std::vector<CollapseStep> steps;
  std::vector<std::size_t> residual;  // sorted cell indices
  bool collapsed = false;             // every residual cell lies over P_S
};

/// Collapses cells not over P_S across free edges (x not in S, exactly one
/// side among remaining cells). Picks the lowest collapsible cell each step.
CollapseLog directed_collapse(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s);

/// Same, choosing uniformly among the collapsible cells.
CollapseLog directed_collapse_random(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s,
                                     std::mt19937_64& rng);

/// Re-executes the steps from scratch; true iff every step was legal and the
/// residual matches.
bool replay(const CayleyComplex& x, const Presentation& p, const GeneratorSet& s, const CollapseLog& log);

enum class FiniteVerdict { DecidedDr, DecidedNotDr, Unknown };

const char* to_string(FiniteVerdict v);

struct FiniteDecision {
  FiniteVerdict verdict = FiniteVerdict::Unknown;
  std::optional<std::size_t> group_order;
  std::optional<CollapseLog> log;
};

/// Collapse of the whole finite complex decides directed DR: collapses are
/// confluent, so a stuck residual is stuck for every order.
FiniteDecision decide_finite(const Presentation& p, const GeneratorSet& s, std::size_t limit = kDefaultCosetLimit);

struct SubcomplexRefutation {
  CollapseLog log;
};

/// A stuck finite subcomplex refutes directed DR away from S.
std::optional<SubcomplexRefutation> refute_with_subcomplex(const CayleyComplex& x, const Presentation& p,
                                                           const GeneratorSet& s);

}  // namespace ddr
