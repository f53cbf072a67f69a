#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/core.hpp"
#include "ddr/lp.hpp"
#include "ddr/rational.hpp"
#include "ddr/whitehead.hpp"

namespace ddr {

/// One exact weight per corner edge, indexed by edge id.
struct WeightAssignment {
  std::vector<Rational> weights;

  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

/// `w <edge-id> <p>/<q>` per line, in edge order.
std::string serialize_weights(const WeightAssignment& w);

/// Every edge id in [0, edge_count) must be assigned exactly once.
WeightAssignment parse_weights(std::string_view text, std::size_t edge_count);

enum class WeightCondition { SEdges = 0, MixedEdges = 1, ReducedCycles = 2, RelatorSums = 3 };

struct ConditionReport {
  bool pass = true;
  std::vector<int> edges;        // violating edges, conditions (1) and (2)
  std::vector<int> cycle_darts;  // violating cycle, condition (3)
  std::optional<std::size_t> relator;  // first violating relator, condition (4)
  std::string detail;
};

struct WeightCertificate {
  GeneratorSet s;
  WeightAssignment assignment;
  std::array<ConditionReport, 4> conditions;
  std::optional<Rational> min_cycle_weight;  // nullopt: no reduced cycle

  bool valid() const;
  const ConditionReport& condition(WeightCondition c) const {
    return conditions[static_cast<std::size_t>(c)];
  }
};

/// Checks the four weight-test inequalities exactly.
WeightCertificate verify_weight_test(const Presentation& p, const GeneratorSet& s,
                                     const WeightAssignment& w);

/// Static part of the constraint system plus one ">= 2" row per cut.
/// Each cut is a dart sequence of a reduced cycle.
lp::Problem weight_constraint_system(const Presentation& p, const GeneratorSet& s,
                                     const std::vector<std::vector<int>>& cuts);

struct WeightSearchResult {
  std::optional<WeightAssignment> assignment;
  std::vector<std::vector<int>> cuts;
  /// Present when infeasible; refers to weight_constraint_system(p, s, cuts).
  std::optional<lp::FarkasCertificate> infeasibility;
  std::size_t rounds = 0;
};

/// Cutting-plane search. An empty assignment is not a refutation of directed
/// DR: the weight test is only sufficient.
WeightSearchResult search_weights(const Presentation& p, const GeneratorSet& s);

}  // namespace ddr
