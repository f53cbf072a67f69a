#include <catch_amalgamated.hpp>

#include <random>

#include "ddr/diagram.hpp"
#include "support.hpp"

using namespace ddr;

namespace {

SurfaceDiagram fx2_disc(const Presentation& p) { return parse_diagram(testing::fixture_text("fx2_disc.json"), p); }

// Labels of edges whose two sides cross the same letter occurrence of the
// same relator, found by scanning the face boundaries directly.
std::set<int> scanned_folding_labels(const SurfaceDiagram& d, const Presentation& p) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sides(d.edges.size());
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    const auto& face = d.faces[f];
    const std::size_t n = p.relators()[face.relator].size();
    for (std::size_t i = 0; i < face.boundary.size(); ++i) {
      sides[face.boundary[i].edge].push_back({face.relator, face.sign > 0 ? i : n - 1 - i});
    }
  }
  std::set<int> out;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (sides[e].size() == 2 && sides[e][0] == sides[e][1]) out.insert(d.edges[e].label);
  }
  return out;
}

std::set<int> folding_labels(const SurfaceDiagram& d, const Presentation& p) {
  std::set<int> out;
  for (const auto& f : folding_edges(d, p)) out.insert(d.edges[f.edge].label);
  return out;
}

long euler(const SurfaceDiagram& d) {
  return static_cast<long>(d.vertex_count) - static_cast<long>(d.edges.size()) + static_cast<long>(d.faces.size());
}

}  // namespace

TEST_CASE("the FX2 disc", "[diagram]") {
  const auto p = testing::fixture("fx2.pres");
  const auto d = fx2_disc(p);
  const auto v = validate_diagram(d, p);
  CHECK(v.valid);
  CHECK(v.disc);
  CHECK_FALSE(v.closed);
  CHECK(v.euler_characteristic == 1);
  CHECK(folding_edges(d, p).empty());
  CHECK(directed_verdict(d, p, {0, 1}) == DiagramVerdict::Refutes);
  CHECK_THROWS_AS(directed_verdict(d, p, {0}), Error);

  const auto sphere = double_disc(d, p);
  const auto sv = validate_diagram(sphere, p);
  CHECK(sv.valid);
  CHECK(sv.sphere);
  CHECK(sphere.faces.size() == 4);
  CHECK(sv.euler_characteristic == 2);
  // The four seam edges fold; all of them carry S-labels.
  CHECK(folding_edges(sphere, p).size() == 4);
  CHECK(folding_labels(sphere, p) == std::set<int>{0, 1});
  CHECK(directed_verdict(sphere, p, {0, 1}) == DiagramVerdict::Refutes);
  CHECK(directed_verdict(sphere, p, {0, 1, 2}) == DiagramVerdict::Consistent);
  CHECK_THROWS_AS(double_disc(sphere, p), Error);
}

TEST_CASE("diagram validation reports problems", "[diagram]") {
  const auto p = testing::fixture("fx2.pres");
  auto d = fx2_disc(p);
  d.edges[3].label = 1;
  const auto v = validate_diagram(d, p);
  CHECK_FALSE(v.valid);
  CHECK_FALSE(v.problems.empty());
  CHECK_THROWS_AS(folding_edges(d, p), Error);

  auto open = fx2_disc(p);
  open.faces.pop_back();
  CHECK_FALSE(validate_diagram(open, p).valid);
  CHECK_THROWS_AS(parse_diagram("{\"vertexCount\": 1}", p), Error);
}

TEST_CASE("diagram JSON round trip", "[diagram]") {
  const auto p = testing::fixture("fx2.pres");
  const auto d = fx2_disc(p);
  CHECK(parse_diagram(serialize_diagram(d, p), p) == d);
  CHECK(diagram_from_json(diagram_to_json(d, p), p) == d);
  const auto s = double_disc(d, p);
  CHECK(parse_diagram(serialize_diagram(s, p), p) == s);
}

TEST_CASE("projective plane and its orientation cover", "[diagram]") {
  const auto p = parse_presentation("gens: a\nrel: a a");
  SurfaceDiagram rp2;
  rp2.vertex_count = 1;
  rp2.edges = {{0, 0, 0, 0}};
  rp2.faces = {{0, 1, {{0, 1}, {0, 1}}}};
  const auto v = validate_diagram(rp2, p);
  REQUIRE(v.valid);
  CHECK(v.closed);
  CHECK_FALSE(v.orientable);
  CHECK(v.euler_characteristic == 1);
  CHECK_FALSE(v.sphere);

  const auto cover = orientation_double_cover(rp2, p);
  const auto cv = validate_diagram(cover, p);
  CHECK(cv.valid);
  CHECK(cv.orientable);
  CHECK(cv.connected);
  CHECK(cv.sphere);
  CHECK(cover.faces.size() == 2);
  CHECK(cv.euler_characteristic == 2);
}

TEST_CASE("matched surfaces of the fixtures", "[diagram]") {
  const auto fx1 = testing::fixture("fx1.pres");
  const auto s1 = matched_surface(fx1, 0);
  const auto v1 = validate_diagram(s1, fx1);
  CHECK(v1.valid);
  CHECK(v1.closed);
  CHECK(v1.orientable);
  CHECK(v1.connected);
  // c is a free edge of FX1 and is matched with its mirror.
  CHECK(folding_labels(s1, fx1) == std::set<int>{2});
  CHECK_THROWS_AS(matched_surface(fx1, 2), Error);

  const auto fx4 = testing::fixture("fx4.pres");
  const auto s4 = matched_surface(fx4, 0);
  const auto v4 = validate_diagram(s4, fx4);
  CHECK(v4.valid);
  CHECK(v4.closed);
  CHECK(s4.faces.size() == 2);
  CHECK(folding_edges(s4, fx4).empty());
  REQUIRE(v4.genus);
  CHECK(*v4.genus == 1);
  CHECK_THROWS_AS(directed_verdict(s4, fx4, {}), Error);
}

TEST_CASE("matched surfaces fold exactly along single-occurrence generators", "[diagram][oracle]") {
  std::mt19937 rng(61);
  int built = 0;
  for (int trial = 0; trial < 300 && built < 100; ++trial) {
    const auto p = testing::random_presentation(rng, 3, 3, 6);
    bool powers = false;
    std::map<int, int> occ;
    for (const auto& r : p.relators()) {
      powers = powers || word_stats(r).proper_power_period.has_value();
      for (const auto& l : r) ++occ[l.gen];
    }
    if (powers) continue;
    std::vector<int> eligible;
    for (auto [g, c] : occ) {
      if (c >= 2) eligible.push_back(g);
    }
    if (eligible.empty()) continue;
    const int x = eligible[testing::uniform(rng, 0, static_cast<int>(eligible.size()) - 1)];
    const auto s = matched_surface(p, x);
    ++built;
    const auto v = validate_diagram(s, p);
    REQUIRE(v.valid);
    CHECK(v.closed);
    CHECK(v.orientable);
    CHECK(v.connected);
    CHECK(v.euler_characteristic == euler(s));
    REQUIRE(v.genus);
    CHECK(v.euler_characteristic == 2 - 2 * *v.genus);

    std::set<std::size_t> relators;
    for (const auto& f : s.faces) relators.insert(f.relator);
    std::set<int> single;
    for (auto k : relators) {
      for (const auto& l : p.relators()[k]) {
        if (occ[l.gen] == 1) single.insert(l.gen);
      }
    }
    CHECK(folding_labels(s, p) == single);
    CHECK(scanned_folding_labels(s, p) == single);
    CHECK(parse_diagram(serialize_diagram(s, p), p) == s);

    const auto cover = orientation_double_cover(s, p);
    const auto cv = validate_diagram(cover, p);
    CHECK(cv.valid);
    CHECK(cover.faces.size() == 2 * s.faces.size());
    CHECK(cv.euler_characteristic == 2 * v.euler_characteristic);
  }
  CHECK(built >= 50);
}
