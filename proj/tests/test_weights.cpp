#include <catch_amalgamated.hpp>

#include <random>

#include "ddr/lp.hpp"
#include "ddr/weights.hpp"
#include "ddr/whitehead.hpp"
#include "support.hpp"

using namespace ddr;

namespace {

WeightAssignment constant(const Presentation& p, Rational v) {
  return {std::vector<Rational>(build_whitehead(p).edge_count(), v)};
}

// Solves a square system exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// A nonempty polyhedron inside the orthant has a vertex; try every basis.
bool feasible_by_vertices(const lp::Problem& p) {
  const std::size_t n = p.variable_count();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : p.constraints()) {
    std::vector<Rational> row(n, 0);
    for (auto [v, k] : c.terms) row[v] += k;
    rows.push_back(row);
    rhs.push_back(c.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n, 0);
    row[i] = 1;
    rows.push_back(row);
    rhs.push_back(0);
  }
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(n);
  std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t k, std::size_t from) {
    if (k == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto i : pick) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      auto x = solve_square(a, b);
      return x && lp::satisfies(p, *x);
    }
    for (std::size_t i = from; i < m; ++i) {
      pick[k] = i;
      if (choose(k + 1, i + 1)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

lp::Problem random_problem(std::mt19937& rng) {
  const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
  lp::Problem p(n);
  for (int k = testing::uniform(rng, 1, 4); k > 0; --k) {
    lp::Constraint c;
    for (std::size_t v = 0; v < n; ++v) {
      const int coeff = testing::uniform(rng, -3, 3);
      if (coeff != 0) c.terms.push_back({static_cast<int>(v), Rational(coeff)});
    }
    const int rel = testing::uniform(rng, 0, 4);
    c.relation = rel < 2 ? lp::Relation::LessEqual : rel < 4 ? lp::Relation::GreaterEqual : lp::Relation::Equal;
    c.rhs = Rational(testing::uniform(rng, -4, 4));
    p.add(c);
  }
  return p;
}

}  // namespace

TEST_CASE("exact simplex agrees with vertex enumeration", "[lp][oracle]") {
  std::mt19937 rng(31);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto p = random_problem(rng);
    const auto sol = lp::find_feasible_point(p);
    const bool oracle = feasible_by_vertices(p);
    REQUIRE(sol.point.has_value() == oracle);
    if (sol.point) {
      ++feasible;
      CHECK(lp::satisfies(p, *sol.point));
      CHECK_FALSE(lp::infeasibility_certificate(p).has_value());
    } else {
      const auto cert = lp::infeasibility_certificate(p);
      REQUIRE(cert.has_value());
      CHECK(lp::verify_farkas(p, *cert));
    }
  }
  CHECK(feasible > 50);
  CHECK(feasible < 390);
}

TEST_CASE("a forged Farkas certificate is rejected", "[lp]") {
  lp::Problem p(1);
  p.add({{{0, Rational(1)}}, lp::Relation::GreaterEqual, Rational(1)});
  CHECK_FALSE(lp::verify_farkas(p, {{Rational(1)}}));
  CHECK_FALSE(lp::verify_farkas(p, {{Rational(-1)}}));
}

TEST_CASE("weight test examples", "[weights]") {
  const auto fx4 = testing::fixture("fx4.pres");
  const auto half = verify_weight_test(fx4, {}, constant(fx4, Rational(1, 2)));
  CHECK(half.valid());
  REQUIRE(half.min_cycle_weight);
  CHECK(*half.min_cycle_weight == 2);

  const auto zero = verify_weight_test(fx4, {}, constant(fx4, Rational(0)));
  CHECK_FALSE(zero.valid());
  CHECK_FALSE(zero.condition(WeightCondition::ReducedCycles).pass);
  CHECK_FALSE(zero.condition(WeightCondition::ReducedCycles).cycle_darts.empty());
  CHECK(zero.condition(WeightCondition::RelatorSums).pass);

  const auto fx3 = testing::fixture("fx3.pres");
  const auto c = verify_weight_test(fx3, {0, 1}, constant(fx3, Rational(1, 2)));
  CHECK(c.valid());
  CHECK(c.condition(WeightCondition::SEdges).pass);
  CHECK(c.condition(WeightCondition::SEdges).edges.empty());
  CHECK(c.condition(WeightCondition::MixedEdges).pass);

  const auto heavy = verify_weight_test(fx4, {}, constant(fx4, Rational(1)));
  CHECK_FALSE(heavy.condition(WeightCondition::RelatorSums).pass);
  CHECK(heavy.condition(WeightCondition::RelatorSums).relator == std::optional<std::size_t>{0});

  // S = {a}: every corner of the commutator touches a, so mixed edges need 1/2
  // and the a+ -- a- corners are absent; S-S edges do not exist.
  const auto low = verify_weight_test(fx4, {0}, constant(fx4, Rational(1, 3)));
  CHECK_FALSE(low.condition(WeightCondition::MixedEdges).pass);
}

TEST_CASE("weight test preconditions", "[weights]") {
  const auto fx4 = testing::fixture("fx4.pres");
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Syntax;
  };
  CHECK(code([&] { verify_weight_test(fx4, {0, 1}, constant(fx4, Rational(1, 2))); }) == ErrorCode::SNotProper);
  const auto bad = parse_presentation("gens: a b\nrel: a b a^-1");
  CHECK(code([&] { verify_weight_test(bad, {}, constant(bad, Rational(1, 2))); }) == ErrorCode::NotCyclicallyReduced);
  CHECK(code([&] { verify_weight_test(fx4, {}, constant(fx4, Rational(-1))); }) == ErrorCode::NegativeWeight);
  CHECK(code([&] { search_weights(bad, {}); }) == ErrorCode::NotCyclicallyReduced);
}

TEST_CASE("weight files", "[weights]") {
  const WeightAssignment w{{Rational(1, 2), Rational(0), Rational(3), Rational(2, 3)}};
  const auto text = serialize_weights(w);
  CHECK(text == "w 0 1/2\nw 1 0/1\nw 2 3/1\nw 3 2/3\n");
  CHECK(parse_weights(text, 4).weights == w.weights);
  CHECK(parse_weights("w 1 1\nw 0 4/8\n", 2).weights == std::vector<Rational>{Rational(1, 2), Rational(1)});
  auto code = [](std::string_view t, std::size_t n) {
    try {
      parse_weights(t, n);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Syntax;
  };
  CHECK(code("w 0 1\n", 2) == ErrorCode::WeightDomain);
  CHECK(code("w 0 1\nw 0 1\nw 1 1\n", 2) == ErrorCode::WeightDomain);
  CHECK(code("w 0 1\nw 2 1\n", 1) == ErrorCode::WeightDomain);
  CHECK(code("w 0 -1/2\n", 1) == ErrorCode::NegativeWeight);
  CHECK(code("w 0 x\n", 1) == ErrorCode::Syntax);
}

TEST_CASE("search finds verified weights on the fixtures", "[weights]") {
  for (auto [file, s] : {std::pair{"fx4.pres", GeneratorSet{}}, std::pair{"fx4.pres", GeneratorSet{0}},
                         std::pair{"fx3.pres", GeneratorSet{0, 1}}, std::pair{"fx3.pres", GeneratorSet{2, 3}}}) {
    const auto p = testing::fixture(file);
    const auto r = search_weights(p, s);
    REQUIRE(r.assignment.has_value());
    CHECK(verify_weight_test(p, s, *r.assignment).valid());
  }
}

TEST_CASE("infeasible weight systems carry Farkas certificates", "[weights]") {
  // <a | a a>: two parallel corners sum to at most 0 yet form a 2-cycle.
  // <a, b | a b a b>: two 2-cycles need total 4 against a budget of 2.
  for (const char* text : {"gens: a\nrel: a a", "gens: a b\nrel: a b a b"}) {
    const auto p = parse_presentation(text);
    const auto r = search_weights(p, {});
    CHECK_FALSE(r.assignment.has_value());
    REQUIRE(r.infeasibility.has_value());
    CHECK(lp::verify_farkas(weight_constraint_system(p, {}, r.cuts), *r.infeasibility));
  }
}

TEST_CASE("a^2 b^2 with S empty is decided by the solver", "[weights]") {
  // The outcome is whatever the LP says; both branches are checked.
  const auto p = parse_presentation("gens: a b\nrel: a a b b");
  const auto r = search_weights(p, {});
  if (r.assignment) {
    CHECK(verify_weight_test(p, {}, *r.assignment).valid());
  } else {
    REQUIRE(r.infeasibility);
    CHECK(lp::verify_farkas(weight_constraint_system(p, {}, r.cuts), *r.infeasibility));
  }
  // All corners at 1/2 satisfy every inequality, so the system is feasible.
  CHECK(verify_weight_test(p, {}, constant(p, Rational(1, 2))).valid());
  CHECK(r.assignment.has_value());
}

TEST_CASE("search round trip, distinct cuts and slack perturbation", "[weights][property]") {
  std::mt19937 rng(32);
  int found = 0, refuted = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto p = testing::random_presentation(rng, 4, 3, 7);
    GeneratorSet s;
    for (int g = 0; g + 1 < static_cast<int>(p.generator_count()); ++g) {
      if (testing::uniform(rng, 0, 2) == 0) s.insert(g);
    }
    const auto r = search_weights(p, s);
    const std::set<std::vector<int>> unique(r.cuts.begin(), r.cuts.end());
    CHECK(unique.size() == r.cuts.size());
    if (!r.assignment) {
      ++refuted;
      REQUIRE(r.infeasibility);
      CHECK(lp::verify_farkas(weight_constraint_system(p, s, r.cuts), *r.infeasibility));
      continue;
    }
    ++found;
    REQUIRE(verify_weight_test(p, s, *r.assignment).valid());

    const auto g = build_whitehead(p);
    std::vector<Rational> sums(p.relator_count(), 0);
    for (const auto& e : g.edges()) sums[e.relator] += r.assignment->weights[e.id];
    auto raised = *r.assignment;
    const auto& e = g.edge(testing::uniform(rng, 0, static_cast<int>(g.edge_count()) - 1));
    const Rational slack = Rational(static_cast<long>(p.relators()[e.relator].size()) - 2) - sums[e.relator];
    raised.weights[e.id] += slack / 2;
    CHECK(verify_weight_test(p, s, raised).valid());
  }
  CHECK(found > 0);
  CHECK(refuted > 0);
}
