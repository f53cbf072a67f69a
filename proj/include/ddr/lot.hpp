#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/certificate.hpp"
#include "ddr/core.hpp"

namespace ddr {

struct LotEdge {
  int source = 0;
  int target = 0;
  int label = 0;

  friend bool operator==(const LotEdge&, const LotEdge&) = default;
};

/// Labeled oriented tree. The constructor enforces tree shape and that
/// labels are vertices.
class Lot {
 public:
  Lot() = default;
  Lot(std::vector<std::string> vertices, std::vector<LotEdge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<LotEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& name(int v) const { return vertices_.at(v); }
  std::optional<int> find(std::string_view name) const;
  int index_of(std::string_view name) const;

  /// Neighbours in the underlying tree.
  std::vector<int> neighbours(int v) const;

  friend bool operator==(const Lot&, const Lot&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<LotEdge> edges_;
};

/// Same vertex names and same named edge triples, ignoring order.
bool same_lot(const Lot& a, const Lot& b);

struct NamedSubset {
  std::string name;
  std::vector<std::string> vertices;
};

struct LotDocument {
  Lot lot;
  std::vector<NamedSubset> sublots;
};

/// `vertices: ...` (optional), `edge <source> <target> <label>`,
/// `sublot [name]: v1 v2 ...`. Vertices not declared are introduced by edges.
LotDocument parse_lot_document(std::string_view text);
Lot parse_lot(std::string_view text);
std::string serialize_lot(const Lot& lot);

/// One relator u1 u3 u2^-1 u3^-1 per edge u1 -> u2 labelled u3.
Presentation lot_presentation(const Lot& lot);

struct LotProperties {
  bool compressed = false;
  bool injective = false;
};

LotProperties lot_properties(const Lot& lot);

struct SubLot {
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // induced edges, sorted
  bool proper = false;
  bool maximal_proper = false;

  friend bool operator==(const SubLot&, const SubLot&) = default;
};

/// Validates a vertex set as a sub-LOT (at least one edge, connected,
/// label-closed). Throws INVALID_SUB_LOT otherwise. Leaves maximal_proper
/// unset; only sub_lots() fills it in.
SubLot make_sub_lot(const Lot& lot, const std::set<int>& vertices);
SubLot make_sub_lot(const Lot& lot, const std::vector<std::string>& names);

/// Every sub-LOT, ordered by vertex list, with proper/maximal flags.
std::vector<SubLot> sub_lots(const Lot& lot);

/// The sub-LOT as a LOT in its own right (vertices in parent order).
Lot sub_lot_as_lot(const Lot& lot, const SubLot& t);

/// Replaces T by the single vertex `y`, which takes T's first position.
/// `y` may reuse a T-vertex name but not any other vertex name.
Lot collapse(const Lot& lot, const SubLot& t, const std::string& y);

/// T-vertex (by name) for every place where `y` occurred in Lbar, keyed by
/// Lbar edge index. All three maps may be left empty when T has one vertex.
struct InsertAttachments {
  std::map<std::size_t, std::string> source;
  std::map<std::size_t, std::string> target;
  std::map<std::size_t, std::string> label;
};

/// Removes y from Lbar and puts T in its place; T's vertices take y's position
/// and T's edges follow Lbar's edges.
Lot insert(const Lot& lbar, const std::string& y, const Lot& t, const InsertAttachments& at);

struct ReorientResult {
  Lot lot;
  std::vector<bool> flipped;  // per edge
  std::size_t nodes = 0;
};

inline constexpr std::size_t kDefaultReorientBudget = 1'000'000;

/// Depth-first search over edge orientations (unflipped first) pruning any
/// branch whose partial positive Whitehead graph has a cycle. Throws
/// SEARCH_EXHAUSTED if the node budget runs out.
ReorientResult reorient_positive_tree(const Lot& lot,
                                      std::size_t node_budget = kDefaultReorientBudget);

struct LotCertification {
  Certificate certificate;
  std::optional<Lot> collapsed;
  std::string y;
  std::string failed_hypothesis;  // empty on success
  bool aspherical = false;
  std::string asphericity_method;
};

/// Collapse-and-test chain for a maximal proper sub-LOT: the collapsed LOT
/// must be compressed and pass either the forest test on W+ / W- or the
/// reduced-girth-at-least-four test on W.
LotCertification certify_lot(const Lot& lot, const SubLot& t);

}  // namespace ddr
