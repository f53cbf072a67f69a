#pragma once

// Fixture loading and random generators shared by the test binaries.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ddr/core.hpp"
#include "ddr/lot.hpp"
#include "ddr/whitehead.hpp"

namespace ddr::testing {

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(DDR_FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Presentation fixture(const std::string& name) { return parse_presentation(fixture_text(name)); }

inline Lot lot_fixture(const std::string& name) { return parse_lot(fixture_text(name)); }

inline int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> generator_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("g" + std::to_string(i));
  return out;
}

/// Random word of the given length with no adjacent inverse pair and, if
/// asked, no cancellation across the wrap-around.
inline Word random_word(std::mt19937& rng, int gens, int length, bool cyclic) {
  while (true) {
    Word w;
    while (static_cast<int>(w.size()) < length) {
      Letter l{uniform(rng, 0, gens - 1), uniform(rng, 0, 1) ? 1 : -1};
      if (!w.empty() && w.back() == l.inverse()) continue;
      w.push_back(l);
    }
    if (!cyclic || is_cyclically_reduced(w)) return w;
  }
}

inline Presentation random_presentation(std::mt19937& rng, int max_gens, int max_rels, int max_len) {
  const int n = uniform(rng, 1, max_gens);
  const int m = uniform(rng, 1, max_rels);
  std::vector<Word> rels;
  for (int i = 0; i < m; ++i) {
    // A single generator cannot form a cyclically reduced word of length 2
    // with mixed signs, so lengths start at 1.
    rels.push_back(random_word(rng, n, uniform(rng, 1, max_len), true));
  }
  return Presentation(generator_names(n), std::move(rels));
}

/// Random labeled oriented tree: random Pruefer-free attachment order,
/// random orientations, labels drawn from all vertices.
inline Lot random_lot(std::mt19937& rng, int max_vertices, int min_vertices = 2) {
  const int n = uniform(rng, min_vertices, max_vertices);
  std::vector<LotEdge> edges;
  for (int v = 1; v < n; ++v) {
    const int u = uniform(rng, 0, v - 1);
    const int label = uniform(rng, 0, n - 1);
    if (uniform(rng, 0, 1)) {
      edges.push_back({u, v, label});
    } else {
      edges.push_back({v, u, label});
    }
  }
  return Lot(generator_names(n), std::move(edges));
}

/// Corner multigraph on 2..6 vertices with at most six edges (twelve darts).
inline WhiteheadGraph random_corner_graph(std::mt19937& rng, bool loops) {
  const int vertices = uniform(rng, 2, 6);
  const int edges = uniform(rng, 0, 6);
  std::vector<CornerEdge> es;
  for (int i = 0; i < edges; ++i) {
    int a = uniform(rng, 0, vertices - 1);
    int b = uniform(rng, 0, vertices - 1);
    if (!loops) {
      while (b == a) b = uniform(rng, 0, vertices - 1);
    }
    es.push_back({i, 0, static_cast<std::size_t>(i), a, b});
  }
  return WhiteheadGraph(static_cast<std::size_t>(vertices), es);
}

}  // namespace ddr::testing
