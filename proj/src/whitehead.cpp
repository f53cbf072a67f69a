#include "ddr/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace ddr {

WhiteheadGraph::WhiteheadGraph(std::size_t vertex_count, std::vector<CornerEdge> edges)
    : edges_(std::move(edges)), incident_(vertex_count) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    e.id = static_cast<int>(i);
    if (e.a < 0 || e.b < 0 || e.a >= static_cast<int>(vertex_count) ||
        e.b >= static_cast<int>(vertex_count)) {
      throw Error(ErrorCode::InvalidArgument, "corner edge endpoint out of range");
    }
    incident_[e.a].push_back(e.id);
    if (e.b != e.a) incident_[e.b].push_back(e.id);
  }
}

std::vector<int> WhiteheadGraph::successors(int d) const {
  std::vector<int> out;
  const int v = dart_head(d);
  for (int e : incident_[v]) {
    for (int nd : {2 * e, 2 * e + 1}) {
      if (dart_tail(nd) == v && nd != reverse_dart(d)) out.push_back(nd);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int after_vertex(Letter l) {
  return vertex_id(l.gen, l.sign > 0 ? Polarity::Minus : Polarity::Plus);
}

int before_vertex(Letter l) {
  return vertex_id(l.gen, l.sign > 0 ? Polarity::Plus : Polarity::Minus);
}

WhiteheadGraph build_whitehead(const Presentation& p) {
  std::vector<CornerEdge> edges;
  for (std::size_t r = 0; r < p.relator_count(); ++r) {
    const auto& w = p.relators()[r];
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      CornerEdge e;
      e.relator = r;
      e.position = pos;
      e.a = after_vertex(w[pos]);
      e.b = before_vertex(w[(pos + 1) % w.size()]);
      edges.push_back(e);
    }
  }
  return WhiteheadGraph(2 * p.generator_count(), std::move(edges));
}

std::string vertex_name(int v, const Presentation& p) {
  return p.name(vertex_generator(v)) + (vertex_polarity(v) == Polarity::Plus ? "+" : "-");
}

std::string dump(const WhiteheadGraph& g, const Presentation& p) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += "edge " + std::to_string(e.id) + " rel=" + std::to_string(e.relator) +
           " pos=" + std::to_string(e.position) + " " + vertex_name(e.a, p) + " -- " +
           vertex_name(e.b, p) + "\n";
  }
  return out;
}

bool vertex_in_view(int v, ViewMode mode) {
  switch (mode) {
    case ViewMode::Full: return true;
    case ViewMode::Positive: return vertex_polarity(v) == Polarity::Plus;
    case ViewMode::Negative: return vertex_polarity(v) == Polarity::Minus;
  }
  return false;
}

bool edge_in_view(const CornerEdge& e, ViewMode mode) {
  return vertex_in_view(e.a, mode) && vertex_in_view(e.b, mode);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Edge path between two vertices inside the forest built so far.
std::vector<int> forest_path(const WhiteheadGraph& g, const std::vector<int>& forest_edges,
                             int from, int to) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
  for (int id : forest_edges) {
    const auto& e = g.edge(id);
    adj[e.a].push_back({e.b, id});
    adj[e.b].push_back({e.a, id});
  }
  std::vector<std::pair<int, int>> prev(g.vertex_count(), {-1, -1});
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<int> queue;
  queue.push(from);
  seen[from] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    if (v == to) break;
    for (auto [w, id] : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        prev[w] = {v, id};
        queue.push(w);
      }
    }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = prev[v].first) path.push_back(prev[v].second);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

ForestResult is_forest(const WhiteheadGraph& g, ViewMode mode) {
  ForestResult result;
  UnionFind uf(g.vertex_count());
  std::vector<int> forest_edges;
  for (const auto& e : g.edges()) {
    if (!edge_in_view(e, mode)) continue;
    ++result.view_edges;
    if (uf.unite(e.a, e.b)) {
      forest_edges.push_back(e.id);
    } else if (result.forest) {
      result.forest = false;
      result.witness_cycle = forest_path(g, forest_edges, e.b, e.a);
      result.witness_cycle.push_back(e.id);
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!vertex_in_view(static_cast<int>(v), mode)) continue;
    ++result.view_vertices;
    if (uf.find(static_cast<int>(v)) == static_cast<int>(v)) ++result.components;
  }
  return result;
}

CycleResult min_weight_reduced_cycle(const WhiteheadGraph& g) {
  std::vector<Rational> unit(g.edge_count(), Rational(1));
  return min_weight_reduced_cycle(g, unit);
}

CycleResult min_weight_reduced_cycle(const WhiteheadGraph& g, std::span<const Rational> weights) {
  if (weights.size() != g.edge_count()) {
    throw Error(ErrorCode::WeightDomain, "weight count does not match the edge count");
  }
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorCode::NegativeWeight, "negative edge weight");
  }
  const int darts = static_cast<int>(g.dart_count());
  std::vector<std::vector<int>> succ(darts);
  for (int d = 0; d < darts; ++d) succ[d] = g.successors(d);
  auto dart_weight = [&](int d) -> const Rational& { return weights[WhiteheadGraph::dart_edge(d)]; };

  CycleResult best;
  using Item = std::pair<Rational, int>;
  for (int start = 0; start < darts; ++start) {
    std::vector<std::optional<Rational>> dist(darts);
    std::vector<int> parent(darts, -1);
    std::vector<bool> done(darts, false);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[start] = dart_weight(start);
    queue.push({*dist[start], start});
    while (!queue.empty()) {
      auto [dd, d] = queue.top();
      queue.pop();
      if (done[d]) continue;
      done[d] = true;
      if (best.weight && dd >= *best.weight) break;
      // Closing d -> start finishes a reduced cycle; the first one popped is
      // the cheapest through `start`.
      if (std::binary_search(succ[d].begin(), succ[d].end(), start)) {
        best.weight = dd;
        best.darts.clear();
        for (int x = d; x != -1; x = parent[x]) best.darts.push_back(x);
        std::reverse(best.darts.begin(), best.darts.end());
        break;
      }
      for (int nd : succ[d]) {
        if (done[nd]) continue;
        Rational cand = dd + dart_weight(nd);
        if (!dist[nd] || cand < *dist[nd]) {
          dist[nd] = cand;
          parent[nd] = d;
          queue.push({cand, nd});
        }
      }
    }
  }
  return best;
}

namespace {

bool extend_walk(const WhiteheadGraph& g, const std::vector<std::vector<int>>& succ,
                 std::vector<int>& walk, std::size_t length) {
  const int last = walk.back();
  if (walk.size() == length) {
    return std::binary_search(succ[last].begin(), succ[last].end(), walk.front());
  }
  for (int nd : succ[last]) {
    walk.push_back(nd);
    if (extend_walk(g, succ, walk, length)) return true;
    walk.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> reduced_cycle_of_length(const WhiteheadGraph& g,
                                                        std::size_t length) {
  if (length == 0) return std::nullopt;
  const int darts = static_cast<int>(g.dart_count());
  std::vector<std::vector<int>> succ(darts);
  for (int d = 0; d < darts; ++d) succ[d] = g.successors(d);
  for (int start = 0; start < darts; ++start) {
    std::vector<int> walk{start};
    if (extend_walk(g, succ, walk, length)) return walk;
  }
  return std::nullopt;
}

std::vector<bool> edges_on_two_cycles(const WhiteheadGraph& g) {
  std::vector<bool> out(g.edge_count(), false);
  for (const auto& e : g.edges()) {
    if (e.is_loop()) {
      out[e.id] = true;
      continue;
    }
    for (int other : g.incident(e.a)) {
      const auto& f = g.edge(other);
      if (other != e.id && ((f.a == e.a && f.b == e.b) || (f.a == e.b && f.b == e.a))) {
        out[e.id] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace ddr
