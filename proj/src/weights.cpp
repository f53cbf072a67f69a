#include "ddr/weights.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "text.hpp"

namespace ddr {

std::string serialize_weights(const WeightAssignment& w) {
  std::string out;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    out += "w " + std::to_string(i) + " " + format_rational(w.weights[i]) + "\n";
  }
  return out;
}

WeightAssignment parse_weights(std::string_view doc, std::size_t edge_count) {
  std::vector<std::optional<Rational>> seen(edge_count);
  for (const auto& line : text::lines(doc)) {
    auto toks = text::tokens(line.text);
    if (toks.empty()) continue;
    if (toks.size() != 3 || toks[0].text != "w") {
      throw ParseError(line.number, toks[0].column, "expected `w <edge-id> <p>/<q>`");
    }
    std::size_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoul(std::string(toks[1].text), &used);
      if (used != toks[1].text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(line.number, toks[1].column, "malformed edge id");
    }
    if (id >= edge_count) {
      throw ParseError(line.number, toks[1].column, "edge id out of range", ErrorCode::WeightDomain);
    }
    if (seen[id]) {
      throw ParseError(line.number, toks[1].column, "edge assigned twice", ErrorCode::WeightDomain);
    }
    Rational q;
    try {
      q = parse_rational(toks[2].text);
    } catch (const Error& e) {
      throw ParseError(line.number, toks[2].column, e.what());
    }
    if (sgn(q) < 0) {
      throw ParseError(line.number, toks[2].column, "negative weight", ErrorCode::NegativeWeight);
    }
    seen[id] = q;
  }
  WeightAssignment w;
  for (std::size_t i = 0; i < edge_count; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::WeightDomain, "edge " + std::to_string(i) + " has no weight");
    }
    w.weights.push_back(*seen[i]);
  }
  return w;
}

bool WeightCertificate::valid() const {
  for (const auto& c : conditions) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

int s_endpoints(const CornerEdge& e, const GeneratorSet& s) {
  return static_cast<int>(s.contains(vertex_generator(e.a))) +
         static_cast<int>(s.contains(vertex_generator(e.b)));
}

void check_preconditions(const Presentation& p, const GeneratorSet& s) {
  require_cyclically_reduced(p);
  require_proper(s, p);
}

}  // namespace

WeightCertificate verify_weight_test(const Presentation& p, const GeneratorSet& s,
                                     const WeightAssignment& w) {
  check_preconditions(p, s);
  const auto g = build_whitehead(p);
  if (w.weights.size() != g.edge_count()) {
    throw Error(ErrorCode::WeightDomain, "assignment does not cover exactly the corner edges");
  }
  for (const auto& x : w.weights) {
    if (sgn(x) < 0) throw Error(ErrorCode::NegativeWeight, "negative edge weight");
  }

  WeightCertificate cert;
  cert.s = s;
  cert.assignment = w;
  auto& c1 = cert.conditions[0];
  auto& c2 = cert.conditions[1];
  auto& c3 = cert.conditions[2];
  auto& c4 = cert.conditions[3];
  const Rational half(1, 2);
  for (const auto& e : g.edges()) {
    const auto& x = w.weights[e.id];
    const int k = s_endpoints(e, s);
    if (k == 2 && x < 1) c1.edges.push_back(e.id);
    if (k == 1 && x < half) c2.edges.push_back(e.id);
  }
  c1.pass = c1.edges.empty();
  c1.detail = c1.pass ? "edges between S-vertices weigh at least 1"
                      : std::to_string(c1.edges.size()) + " S-S edge(s) below 1";
  c2.pass = c2.edges.empty();
  c2.detail = c2.pass ? "edges with one S-endpoint weigh at least 1/2"
                      : std::to_string(c2.edges.size()) + " mixed edge(s) below 1/2";

  auto cycle = min_weight_reduced_cycle(g, w.weights);
  cert.min_cycle_weight = cycle.weight;
  c3.pass = cycle.infinite() || *cycle.weight >= 2;
  if (!c3.pass) c3.cycle_darts = cycle.darts;
  c3.detail = cycle.infinite() ? "no reduced cycle"
                               : "minimum reduced cycle weight " + format_rational(*cycle.weight);

  for (std::size_t r = 0; r < p.relator_count(); ++r) {
    Rational sum = 0;
    for (const auto& e : g.edges()) {
      if (e.relator == r) sum += w.weights[e.id];
    }
    if (sum > static_cast<long>(p.relators()[r].size()) - 2) {
      c4.pass = false;
      c4.relator = r;
      c4.detail = "relator " + std::to_string(r) + " corner sum " + format_rational(sum) +
                  " exceeds length - 2";
      break;
    }
  }
  if (c4.pass) c4.detail = "every relator corner sum is at most length - 2";
  return cert;
}

lp::Problem weight_constraint_system(const Presentation& p, const GeneratorSet& s,
                                     const std::vector<std::vector<int>>& cuts) {
  const auto g = build_whitehead(p);
  lp::Problem problem(g.edge_count());
  for (const auto& e : g.edges()) {
    const int k = s_endpoints(e, s);
    if (k == 2) problem.add({{{e.id, Rational(1)}}, lp::Relation::GreaterEqual, Rational(1)});
    if (k == 1) problem.add({{{e.id, Rational(1)}}, lp::Relation::GreaterEqual, Rational(1, 2)});
  }
  for (std::size_t r = 0; r < p.relator_count(); ++r) {
    lp::Constraint c;
    c.relation = lp::Relation::LessEqual;
    c.rhs = static_cast<long>(p.relators()[r].size()) - 2;
    for (const auto& e : g.edges()) {
      if (e.relator == r) c.terms.push_back({e.id, Rational(1)});
    }
    problem.add(std::move(c));
  }
  for (const auto& cut : cuts) {
    std::map<int, int> count;
    for (int d : cut) ++count[WhiteheadGraph::dart_edge(d)];
    lp::Constraint c;
    c.relation = lp::Relation::GreaterEqual;
    c.rhs = 2;
    for (auto [edge, k] : count) c.terms.push_back({edge, Rational(k)});
    problem.add(std::move(c));
  }
  return problem;
}

WeightSearchResult search_weights(const Presentation& p, const GeneratorSet& s) {
  check_preconditions(p, s);
  const auto g = build_whitehead(p);
  WeightSearchResult result;
  std::set<std::map<int, int>> seen_cuts;
  while (true) {
    ++result.rounds;
    auto problem = weight_constraint_system(p, s, result.cuts);
    auto solution = lp::find_feasible_point(problem);
    if (!solution.point) {
      result.infeasibility = lp::infeasibility_certificate(problem);
      if (!result.infeasibility || !lp::verify_farkas(problem, *result.infeasibility)) {
        throw std::logic_error("simplex reported infeasible without a valid Farkas certificate");
      }
      return result;
    }
    auto cycle = min_weight_reduced_cycle(g, *solution.point);
    if (cycle.infinite() || *cycle.weight >= 2) {
      WeightAssignment w{*solution.point};
      if (!verify_weight_test(p, s, w).valid()) {
        throw std::logic_error("weight search produced an assignment that fails verification");
      }
      result.assignment = std::move(w);
      return result;
    }
    std::map<int, int> key;
    for (int d : cycle.darts) ++key[WhiteheadGraph::dart_edge(d)];
    if (!seen_cuts.insert(key).second) {
      throw std::logic_error("cutting-plane loop generated a duplicate cycle");
    }
    result.cuts.push_back(cycle.darts);
  }
}

}  // namespace ddr
