#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ddr/rational.hpp"

/// Exact dense simplex over the rationals, used for feasibility only.
/// Every variable is implicitly nonnegative.
namespace ddr::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<std::pair<int, Rational>> terms;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
};

class Problem {
 public:
  explicit Problem(std::size_t variable_count) : variable_count_(variable_count) {}

  std::size_t add(Constraint c);

  std::size_t variable_count() const { return variable_count_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  std::size_t variable_count_;
  std::vector<Constraint> constraints_;
};

struct Solution {
  std::optional<std::vector<Rational>> point;
  std::size_t pivots = 0;
};

/// Phase-one simplex with Bland's rule; `point` is empty iff infeasible.
Solution find_feasible_point(const Problem& problem);

bool satisfies(const Problem& problem, std::span<const Rational> x);

/// Multipliers y, one per constraint, read against the constraint in
/// ">=" orientation (a LessEqual row contributes -y * row). Inequality
/// multipliers are nonnegative, equality multipliers free. Proves
/// infeasibility when sum y_i a_i <= 0 componentwise and sum y_i b_i > 0.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

std::optional<FarkasCertificate> infeasibility_certificate(const Problem& problem);

bool verify_farkas(const Problem& problem, const FarkasCertificate& cert);

}  // namespace ddr::lp
