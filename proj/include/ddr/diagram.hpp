#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddr/core.hpp"

namespace ddr {

struct DiagramEdge {
  int id = 0;  // external id, kept for round-tripping
  int label = 0;
  int from = 0;
  int to = 0;

  friend bool operator==(const DiagramEdge&, const DiagramEdge&) = default;
};

/// Traversal of an edge; dir +1 runs from -> to and reads label^+1.
/// `edge` is an index into SurfaceDiagram::edges.
struct DiagramDart {
  int edge = 0;
  int dir = 1;

  friend bool operator==(const DiagramDart&, const DiagramDart&) = default;
};

struct DiagramFace {
  std::size_t relator = 0;
  int sign = 1;  // boundary reads the relator (+1) or its inverse (-1)
  std::vector<DiagramDart> boundary;

  friend bool operator==(const DiagramFace&, const DiagramFace&) = default;
};

struct SurfaceDiagram {
  std::size_t vertex_count = 0;
  std::vector<DiagramEdge> edges;
  std::vector<DiagramFace> faces;
  std::vector<std::vector<DiagramDart>> boundary_cycles;

  int tail(const DiagramDart& d) const { return d.dir > 0 ? edges[d.edge].from : edges[d.edge].to; }
  int head(const DiagramDart& d) const { return d.dir > 0 ? edges[d.edge].to : edges[d.edge].from; }

  friend bool operator==(const SurfaceDiagram&, const SurfaceDiagram&) = default;
};

nlohmann::json diagram_to_json(const SurfaceDiagram& d, const Presentation& p);
SurfaceDiagram diagram_from_json(const nlohmann::json& j, const Presentation& p);
std::string serialize_diagram(const SurfaceDiagram& d, const Presentation& p);
SurfaceDiagram parse_diagram(std::string_view text, const Presentation& p);

struct DiagramValidation {
  bool valid = false;
  std::vector<std::string> problems;
  long euler_characteristic = 0;
  bool closed = false;
  bool orientable = false;
  bool connected = false;
  bool sphere = false;
  bool disc = false;
  std::optional<long> genus;  // closed, connected and orientable only
};

DiagramValidation validate_diagram(const SurfaceDiagram& d, const Presentation& p);

/// Letter occurrence of the relator crossed at boundary position `position`.
std::size_t occurrence_index(const SurfaceDiagram& d, const Presentation& p, std::size_t face,
                             std::size_t position);

struct FaceSide {
  std::size_t face = 0;
  std::size_t position = 0;

  friend bool operator==(const FaceSide&, const FaceSide&) = default;
};

struct FoldingEdge {
  int edge = 0;  // index
  FaceSide side_a;
  FaceSide side_b;
};

/// Both sides on faces over the same relator, crossing the same letter
/// occurrence of it. Throws INVALID_DIAGRAM on invalid input.
std::vector<FoldingEdge> folding_edges(const SurfaceDiagram& d, const Presentation& p);

enum class DiagramVerdict { Consistent, Refutes };

const char* to_string(DiagramVerdict v);

/// Spheres are tested directly; discs need boundary labels in S and are tested
/// on their interior edges (which is what the double sees off the seam).
DiagramVerdict directed_verdict(const SurfaceDiagram& d, const Presentation& p, const GeneratorSet& s);

/// Glues D to its mirror image along the single boundary cycle.
SurfaceDiagram double_disc(const SurfaceDiagram& d, const Presentation& p);

/// Reverses the listing of every face whose orientation disagrees with the
/// first face of its component. Requires an orientable diagram.
SurfaceDiagram normalize_orientation(const SurfaceDiagram& d, const Presentation& p);

/// Oriented two-sheeted cover of a closed diagram.
SurfaceDiagram orientation_double_cover(const SurfaceDiagram& d, const Presentation& p);

/// Pairs the polygon sides of every relator and its inverse by the cyclic
/// N <-> N+1 rule (free generators with their mirror), keeps the component
/// through the first x-side, and passes to the orientation cover if needed.
SurfaceDiagram matched_surface(const Presentation& p, int x);

}  // namespace ddr
