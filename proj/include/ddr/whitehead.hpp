#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddr/core.hpp"
#include "ddr/rational.hpp"

namespace ddr {

// Vertex x+ sits near the start of the generator edge x, x- near its end.
// Vertex ids are 2*gen for x+ and 2*gen+1 for x-.
enum class Polarity { Plus, Minus };

constexpr int vertex_id(int gen, Polarity p) { return 2 * gen + (p == Polarity::Minus ? 1 : 0); }
constexpr int vertex_generator(int v) { return v / 2; }
constexpr Polarity vertex_polarity(int v) { return v % 2 == 0 ? Polarity::Plus : Polarity::Minus; }

/// One edge per relator corner (y_p, y_{p+1}): a = after(y_p), b = before(y_{p+1}).
struct CornerEdge {
  int id = 0;
  std::size_t relator = 0;
  std::size_t position = 0;
  int a = 0;
  int b = 0;

  bool is_loop() const { return a == b; }
};

/// Corner multigraph. Parallel edges stay distinct; loops are representable.
class WhiteheadGraph {
 public:
  WhiteheadGraph() = default;
  WhiteheadGraph(std::size_t vertex_count, std::vector<CornerEdge> edges);

  std::size_t vertex_count() const { return incident_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t dart_count() const { return 2 * edges_.size(); }
  const std::vector<CornerEdge>& edges() const { return edges_; }
  const CornerEdge& edge(int id) const { return edges_.at(id); }
  const std::vector<int>& incident(int v) const { return incident_.at(v); }

  // Dart 2e runs a -> b along edge e, dart 2e+1 runs b -> a.
  static int dart_edge(int d) { return d / 2; }
  static int reverse_dart(int d) { return d ^ 1; }
  int dart_tail(int d) const { return d % 2 == 0 ? edges_[d / 2].a : edges_[d / 2].b; }
  int dart_head(int d) const { return d % 2 == 0 ? edges_[d / 2].b : edges_[d / 2].a; }

  /// Darts leaving the head of `d`, excluding the reverse of `d`.
  std::vector<int> successors(int d) const;

 private:
  std::vector<CornerEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

int after_vertex(Letter l);
int before_vertex(Letter l);

WhiteheadGraph build_whitehead(const Presentation& p);

std::string vertex_name(int v, const Presentation& p);

/// `edge <id> rel=<i> pos=<p> <gen><+|-> -- <gen><+|->` per line.
std::string dump(const WhiteheadGraph& g, const Presentation& p);

enum class ViewMode { Full, Positive, Negative };

bool vertex_in_view(int v, ViewMode mode);
bool edge_in_view(const CornerEdge& e, ViewMode mode);

struct ForestResult {
  bool forest = true;
  std::vector<int> witness_cycle;  // edge ids, empty when forest
  std::size_t view_vertices = 0;
  std::size_t view_edges = 0;
  std::size_t components = 0;

  bool tree() const { return forest && components == 1; }
};

ForestResult is_forest(const WhiteheadGraph& g, ViewMode mode);

struct CycleResult {
  std::optional<Rational> weight;  // nullopt means no reduced cycle exists
  std::vector<int> darts;

  bool infinite() const { return !weight.has_value(); }
};

/// Minimum total weight over closed dart walks that never follow a dart by its
/// reverse, wrap-around included. Unit weights give the reduced girth.
CycleResult min_weight_reduced_cycle(const WhiteheadGraph& g);
CycleResult min_weight_reduced_cycle(const WhiteheadGraph& g, std::span<const Rational> weights);

/// Some reduced closed walk with exactly `length` darts, if one exists.
std::optional<std::vector<int>> reduced_cycle_of_length(const WhiteheadGraph& g,
                                                        std::size_t length);

/// Edges lying on a reduced closed walk of length two (parallel edges, loops).
std::vector<bool> edges_on_two_cycles(const WhiteheadGraph& g);

}  // namespace ddr
