#include "ddr/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ddr {

using nlohmann::json;

namespace {

json darts_to_json(const SurfaceDiagram& d, const std::vector<DiagramDart>& darts) {
  json out = json::array();
  for (const auto& x : darts) out.push_back({{"edge", d.edges.at(x.edge).id}, {"dir", x.dir}});
  return out;
}

std::vector<DiagramDart> darts_from_json(const json& j, const std::map<int, int>& index) {
  std::vector<DiagramDart> out;
  for (const auto& x : j) {
    const int id = x.at("edge").get<int>();
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::InvalidDiagram, "unknown edge id " + std::to_string(id));
    out.push_back({it->second, x.at("dir").get<int>()});
  }
  return out;
}

}  // namespace

json diagram_to_json(const SurfaceDiagram& d, const Presentation& p) {
  json j;
  j["vertexCount"] = d.vertex_count;
  j["edges"] = json::array();
  for (const auto& e : d.edges) {
    j["edges"].push_back({{"id", e.id}, {"label", p.name(e.label)}, {"from", e.from}, {"to", e.to}});
  }
  j["faces"] = json::array();
  for (const auto& f : d.faces) {
    j["faces"].push_back({{"relator", f.relator}, {"sign", f.sign}, {"boundary", darts_to_json(d, f.boundary)}});
  }
  if (!d.boundary_cycles.empty()) {
    j["boundaryCycles"] = json::array();
    for (const auto& c : d.boundary_cycles) j["boundaryCycles"].push_back(darts_to_json(d, c));
  }
  return j;
}

SurfaceDiagram diagram_from_json(const json& j, const Presentation& p) {
  try {
    SurfaceDiagram d;
    const long vc = j.at("vertexCount").get<long>();
    if (vc < 0) throw Error(ErrorCode::InvalidDiagram, "negative vertexCount");
    d.vertex_count = static_cast<std::size_t>(vc);
    std::map<int, int> index;
    for (const auto& e : j.at("edges")) {
      DiagramEdge edge;
      edge.id = e.at("id").get<int>();
      const auto label = e.at("label").get<std::string>();
      auto g = p.find(label);
      if (!g) throw Error(ErrorCode::UndeclaredGenerator, "edge label '" + label + "' is not a generator");
      edge.label = *g;
      edge.from = e.at("from").get<int>();
      edge.to = e.at("to").get<int>();
      if (!index.emplace(edge.id, static_cast<int>(d.edges.size())).second) {
        throw Error(ErrorCode::InvalidDiagram, "duplicate edge id " + std::to_string(edge.id));
      }
      d.edges.push_back(edge);
    }
    for (const auto& f : j.at("faces")) {
      DiagramFace face;
      const long r = f.at("relator").get<long>();
      if (r < 0) throw Error(ErrorCode::InvalidDiagram, "negative relator index");
      face.relator = static_cast<std::size_t>(r);
      face.sign = f.at("sign").get<int>();
      face.boundary = darts_from_json(f.at("boundary"), index);
      d.faces.push_back(std::move(face));
    }
    if (j.contains("boundaryCycles")) {
      for (const auto& c : j.at("boundaryCycles")) d.boundary_cycles.push_back(darts_from_json(c, index));
    }
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDiagram, std::string("malformed diagram JSON: ") + e.what());
  }
}

std::string serialize_diagram(const SurfaceDiagram& d, const Presentation& p) {
  return diagram_to_json(d, p).dump(2) + "\n";
}

SurfaceDiagram parse_diagram(std::string_view text, const Presentation& p) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDiagram, std::string("malformed diagram JSON: ") + e.what());
  }
  return diagram_from_json(j, p);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Union-find carrying the parity of each element relative to its root.
struct ParityUnionFind {
  std::vector<int> parent;
  std::vector<int> parity;
  explicit ParityUnionFind(std::size_t n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    int p = 0;
    while (parent[x] != x) {
      p ^= parity[x];
      x = parent[x];
    }
    return {x, p};
  }
  // Records parity(a) xor parity(b) == rel; false on contradiction.
  bool relate(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent[ra] = rb;
    parity[ra] = pa ^ pb ^ rel;
    return true;
  }
};

struct Side {
  bool on_face = true;
  std::size_t owner = 0;  // face or boundary-cycle index
  std::size_t position = 0;
  int dir = 1;
};

std::vector<std::vector<Side>> sides_by_edge(const SurfaceDiagram& d) {
  std::vector<std::vector<Side>> sides(d.edges.size());
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    const auto& b = d.faces[f].boundary;
    for (std::size_t k = 0; k < b.size(); ++k) sides[b[k].edge].push_back({true, f, k, b[k].dir});
  }
  for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
    const auto& b = d.boundary_cycles[c];
    for (std::size_t k = 0; k < b.size(); ++k) sides[b[k].edge].push_back({false, c, k, b[k].dir});
  }
  return sides;
}

// Edge-end node: 2*edge for the `from` end, 2*edge+1 for the `to` end.
int head_end(const DiagramDart& x) { return 2 * x.edge + (x.dir > 0 ? 1 : 0); }
int tail_end(const DiagramDart& x) { return 2 * x.edge + (x.dir > 0 ? 0 : 1); }

DiagramFace reversed(const DiagramFace& f) {
  DiagramFace out;
  out.relator = f.relator;
  out.sign = -f.sign;
  for (auto it = f.boundary.rbegin(); it != f.boundary.rend(); ++it) out.boundary.push_back({it->edge, -it->dir});
  return out;
}

Word read_word(const SurfaceDiagram& d, const std::vector<DiagramDart>& darts) {
  Word w;
  for (const auto& x : darts) w.push_back({d.edges[x.edge].label, x.dir});
  return w;
}

bool darts_well_formed(const SurfaceDiagram& d, const std::vector<DiagramDart>& darts) {
  return std::all_of(darts.begin(), darts.end(), [&](const DiagramDart& x) {
    return x.edge >= 0 && x.edge < static_cast<int>(d.edges.size()) && (x.dir == 1 || x.dir == -1);
  });
}

bool closed_walk(const SurfaceDiagram& d, const std::vector<DiagramDart>& darts) {
  for (std::size_t k = 0; k < darts.size(); ++k) {
    if (d.head(darts[k]) != d.tail(darts[(k + 1) % darts.size()])) return false;
  }
  return true;
}

}  // namespace

DiagramValidation validate_diagram(const SurfaceDiagram& d, const Presentation& p) {
  DiagramValidation v;
  auto& problems = v.problems;
  const int vc = static_cast<int>(d.vertex_count);
  std::set<int> ids;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    const std::string where = "edge " + std::to_string(e.id);
    if (!ids.insert(e.id).second) problems.push_back(where + ": duplicate id");
    if (e.from < 0 || e.from >= vc || e.to < 0 || e.to >= vc) problems.push_back(where + ": endpoint out of range");
    if (e.label < 0 || e.label >= static_cast<int>(p.generator_count())) problems.push_back(where + ": bad label");
  }
  if (!problems.empty()) return v;

  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    const auto& face = d.faces[f];
    const std::string where = "face " + std::to_string(f);
    if (face.relator >= p.relator_count()) {
      problems.push_back(where + ": relator index out of range");
      continue;
    }
    if (face.sign != 1 && face.sign != -1) problems.push_back(where + ": sign must be +1 or -1");
    if (face.boundary.empty()) {
      problems.push_back(where + ": empty boundary");
      continue;
    }
    if (!darts_well_formed(d, face.boundary)) {
      problems.push_back(where + ": malformed boundary dart");
      continue;
    }
    const Word& r = p.relators()[face.relator];
    if (read_word(d, face.boundary) != (face.sign > 0 ? r : inverse(r))) {
      problems.push_back(where + ": boundary label does not read the relator");
    }
    if (!closed_walk(d, face.boundary)) problems.push_back(where + ": boundary is not a closed walk");
  }
  for (std::size_t c = 0; c < d.boundary_cycles.size(); ++c) {
    const auto& b = d.boundary_cycles[c];
    const std::string where = "boundary cycle " + std::to_string(c);
    if (b.empty() || !darts_well_formed(d, b)) {
      problems.push_back(where + ": empty or malformed");
      continue;
    }
    if (!closed_walk(d, b)) problems.push_back(where + ": not a closed walk");
  }
  if (!problems.empty()) return v;

  const auto sides = sides_by_edge(d);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const std::string where = "edge " + std::to_string(d.edges[i].id);
    if (sides[i].size() != 2) {
      problems.push_back(where + ": occurs " + std::to_string(sides[i].size()) + " times, expected 2");
    } else if (!sides[i][0].on_face && !sides[i][1].on_face) {
      problems.push_back(where + ": lies on no 2-cell");
    }
  }
  if (!problems.empty()) return v;

  // Vertex links: edge-ends at a vertex joined by the corners of faces and
  // boundary cycles must form one cycle.
  UnionFind link(2 * d.edges.size());
  auto add_corners = [&](const std::vector<DiagramDart>& b) {
    for (std::size_t k = 0; k < b.size(); ++k) link.unite(head_end(b[k]), tail_end(b[(k + 1) % b.size()]));
  };
  for (const auto& f : d.faces) add_corners(f.boundary);
  for (const auto& c : d.boundary_cycles) add_corners(c);
  std::vector<std::set<int>> classes(d.vertex_count);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    classes[d.edges[i].from].insert(link.find(2 * static_cast<int>(i)));
    classes[d.edges[i].to].insert(link.find(2 * static_cast<int>(i) + 1));
  }
  for (std::size_t x = 0; x < d.vertex_count; ++x) {
    if (classes[x].empty()) problems.push_back("vertex " + std::to_string(x) + ": isolated");
    if (classes[x].size() > 1) problems.push_back("vertex " + std::to_string(x) + ": link is not a single cycle");
  }
  if (!problems.empty()) return v;

  v.valid = true;
  ParityUnionFind orient(d.faces.size());
  v.orientable = true;
  for (const auto& s : sides) {
    if (!s[0].on_face || !s[1].on_face) continue;
    const int rel = s[0].dir * s[1].dir == -1 ? 0 : 1;
    if (!orient.relate(static_cast<int>(s[0].owner), static_cast<int>(s[1].owner), rel)) v.orientable = false;
  }
  UnionFind comp(d.vertex_count);
  for (const auto& e : d.edges) comp.unite(e.from, e.to);
  std::size_t components = 0;
  for (std::size_t x = 0; x < d.vertex_count; ++x) components += comp.find(static_cast<int>(x)) == static_cast<int>(x);
  v.connected = components == 1;
  v.euler_characteristic = static_cast<long>(d.vertex_count) - static_cast<long>(d.edges.size()) +
                           static_cast<long>(d.faces.size());
  v.closed = d.boundary_cycles.empty();
  v.sphere = v.closed && v.orientable && v.connected && v.euler_characteristic == 2;
  v.disc = !v.closed && d.boundary_cycles.size() == 1 && v.orientable && v.connected && v.euler_characteristic == 1;
  if (v.closed && v.orientable && v.connected) v.genus = (2 - v.euler_characteristic) / 2;
  return v;
}

std::size_t occurrence_index(const SurfaceDiagram& d, const Presentation& p, std::size_t face,
                             std::size_t position) {
  const auto& f = d.faces.at(face);
  const std::size_t n = p.relators().at(f.relator).size();
  return f.sign > 0 ? position : n - 1 - position;
}

namespace {

void require_valid(const SurfaceDiagram& d, const Presentation& p, const DiagramValidation& v) {
  if (!v.valid) {
    throw Error(ErrorCode::InvalidDiagram, v.problems.empty() ? "invalid diagram" : v.problems.front());
  }
  (void)d;
  (void)p;
}

}  // namespace

std::vector<FoldingEdge> folding_edges(const SurfaceDiagram& d, const Presentation& p) {
  require_valid(d, p, validate_diagram(d, p));
  std::vector<FoldingEdge> out;
  const auto sides = sides_by_edge(d);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& a = sides[i][0];
    const auto& b = sides[i][1];
    if (!a.on_face || !b.on_face) continue;
    if (d.faces[a.owner].relator != d.faces[b.owner].relator) continue;
    if (occurrence_index(d, p, a.owner, a.position) != occurrence_index(d, p, b.owner, b.position)) continue;
    out.push_back({static_cast<int>(i), {a.owner, a.position}, {b.owner, b.position}});
  }
  return out;
}

const char* to_string(DiagramVerdict v) { return v == DiagramVerdict::Refutes ? "REFUTES" : "CONSISTENT"; }

DiagramVerdict directed_verdict(const SurfaceDiagram& d, const Presentation& p, const GeneratorSet& s) {
  const auto v = validate_diagram(d, p);
  require_valid(d, p, v);
  if (!v.sphere) {
    if (!v.disc) throw Error(ErrorCode::HypothesisNotMet, "diagram is neither a sphere nor a disc");
    for (const auto& x : d.boundary_cycles.front()) {
      if (!s.contains(d.edges[x.edge].label)) {
        throw Error(ErrorCode::HypothesisNotMet, "disc boundary carries a label outside S");
      }
    }
  }
  const bool outside = std::any_of(d.edges.begin(), d.edges.end(),
                                   [&](const DiagramEdge& e) { return !s.contains(e.label); });
  const auto folds = folding_edges(d, p);
  const bool folding_outside = std::any_of(folds.begin(), folds.end(), [&](const FoldingEdge& f) {
    return !s.contains(d.edges[f.edge].label);
  });
  return outside && !folding_outside ? DiagramVerdict::Refutes : DiagramVerdict::Consistent;
}

SurfaceDiagram double_disc(const SurfaceDiagram& d, const Presentation& p) {
  const auto v = validate_diagram(d, p);
  if (!v.disc) throw Error(ErrorCode::NotADisc, "doubling needs a valid disc diagram");
  std::vector<bool> on_boundary(d.edges.size(), false);
  std::vector<bool> boundary_vertex(d.vertex_count, false);
  for (const auto& x : d.boundary_cycles.front()) {
    on_boundary[x.edge] = true;
    boundary_vertex[d.edges[x.edge].from] = boundary_vertex[d.edges[x.edge].to] = true;
  }
  SurfaceDiagram out = d;
  out.boundary_cycles.clear();
  std::vector<int> vmap(d.vertex_count);
  for (std::size_t x = 0; x < d.vertex_count; ++x) {
    vmap[x] = boundary_vertex[x] ? static_cast<int>(x) : static_cast<int>(out.vertex_count++);
  }
  int next_id = 0;
  for (const auto& e : d.edges) next_id = std::max(next_id, e.id + 1);
  std::vector<int> emap(d.edges.size());
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    if (on_boundary[i]) {
      emap[i] = static_cast<int>(i);
      continue;
    }
    const auto& e = d.edges[i];
    emap[i] = static_cast<int>(out.edges.size());
    out.edges.push_back({next_id++, e.label, vmap[e.from], vmap[e.to]});
  }
  for (const auto& f : d.faces) {
    DiagramFace mirror = reversed(f);
    for (auto& x : mirror.boundary) x.edge = emap[x.edge];
    out.faces.push_back(std::move(mirror));
  }
  return out;
}

SurfaceDiagram normalize_orientation(const SurfaceDiagram& d, const Presentation& p) {
  const auto v = validate_diagram(d, p);
  require_valid(d, p, v);
  if (!v.orientable) throw Error(ErrorCode::InvalidDiagram, "diagram is not orientable");
  ParityUnionFind orient(d.faces.size());
  for (const auto& s : sides_by_edge(d)) {
    if (s[0].on_face && s[1].on_face) {
      orient.relate(static_cast<int>(s[0].owner), static_cast<int>(s[1].owner), s[0].dir * s[1].dir == -1 ? 0 : 1);
    }
  }
  // Pin each component's orientation to its lowest face.
  std::map<int, int> root_parity;
  SurfaceDiagram out = d;
  for (std::size_t f = 0; f < d.faces.size(); ++f) {
    auto [root, parity] = orient.find(static_cast<int>(f));
    auto [it, fresh] = root_parity.emplace(root, parity);
    if (parity != it->second) out.faces[f] = reversed(d.faces[f]);
  }
  return out;
}

namespace {

struct SlotDart {
  int slot = 0;
  int dir = 1;
};

struct SlotFace {
  std::size_t relator = 0;
  int sign = 1;
  std::vector<SlotDart> boundary;
};

// Builds a closed diagram from faces whose sides reference shared slots; each
// slot becomes an edge oriented along its label and vertices are the classes
// of edge-ends glued at face corners.
SurfaceDiagram assemble(const std::vector<int>& slot_labels, const std::vector<SlotFace>& faces) {
  const std::size_t n = slot_labels.size();
  UnionFind ends(2 * n);
  for (const auto& f : faces) {
    const auto& b = f.boundary;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const DiagramDart cur{b[k].slot, b[k].dir};
      const DiagramDart nxt{b[(k + 1) % b.size()].slot, b[(k + 1) % b.size()].dir};
      ends.unite(head_end(cur), tail_end(nxt));
    }
  }
  SurfaceDiagram d;
  std::map<int, int> vertex_of;
  auto vertex = [&](int end) {
    auto [it, fresh] = vertex_of.emplace(ends.find(end), static_cast<int>(vertex_of.size()));
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const int from = vertex(2 * static_cast<int>(i));
    const int to = vertex(2 * static_cast<int>(i) + 1);
    d.edges.push_back({static_cast<int>(i), slot_labels[i], from, to});
  }
  d.vertex_count = vertex_of.size();
  for (const auto& f : faces) {
    DiagramFace face{f.relator, f.sign, {}};
    for (const auto& x : f.boundary) face.boundary.push_back({x.slot, x.dir});
    d.faces.push_back(std::move(face));
  }
  return d;
}

}  // namespace

SurfaceDiagram orientation_double_cover(const SurfaceDiagram& d, const Presentation& p) {
  const auto v = validate_diagram(d, p);
  require_valid(d, p, v);
  if (!v.closed) throw Error(ErrorCode::InvalidDiagram, "orientation cover needs a closed diagram");
  // Face copy 2f keeps the listing, copy 2f+1 reverses it.
  std::vector<SlotFace> faces;
  for (const auto& f : d.faces) {
    const auto r = reversed(f);
    for (const auto* src : {&f, &r}) {
      SlotFace sf{src->relator, src->sign, {}};
      for (const auto& x : src->boundary) sf.boundary.push_back({-1, x.dir});
      faces.push_back(std::move(sf));
    }
  }
  std::vector<int> labels;
  auto place = [&](std::size_t face, int copy, std::size_t pos, int slot) {
    const std::size_t n = d.faces[face].boundary.size();
    faces[2 * face + copy].boundary[copy == 0 ? pos : n - 1 - pos].slot = slot;
  };
  const auto sides = sides_by_edge(d);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& a = sides[i][0];
    const auto& b = sides[i][1];
    // The kept copy of a meets the copy of b that crosses the edge oppositely.
    const int match = a.dir * b.dir == -1 ? 0 : 1;
    for (int copy : {0, 1}) {
      const int slot = static_cast<int>(labels.size());
      labels.push_back(d.edges[i].label);
      place(a.owner, copy, a.position, slot);
      place(b.owner, copy ^ match, b.position, slot);
    }
  }
  return assemble(labels, faces);
}

SurfaceDiagram matched_surface(const Presentation& p, int x) {
  if (x < 0 || x >= static_cast<int>(p.generator_count())) {
    throw Error(ErrorCode::GeneratorNotEligible, "unknown generator");
  }
  struct Occurrence {
    std::size_t relator;
    std::size_t position;
  };
  std::vector<std::vector<Occurrence>> occ(p.generator_count());
  for (std::size_t k = 0; k < p.relator_count(); ++k) {
    const auto& r = p.relators()[k];
    for (std::size_t i = 0; i < r.size(); ++i) occ[r[i].gen].push_back({k, i});
  }
  if (occ[x].empty()) throw Error(ErrorCode::GeneratorNotEligible, p.name(x) + " occurs in no relator");
  if (occ[x].size() == 1) throw Error(ErrorCode::GeneratorNotEligible, p.name(x) + " is a free edge");

  // Face 2k is the polygon of r_k, face 2k+1 the polygon of its inverse.
  std::vector<SlotFace> faces;
  for (std::size_t k = 0; k < p.relator_count(); ++k) {
    const auto& r = p.relators()[k];
    SlotFace plus{k, 1, {}};
    SlotFace minus{k, -1, {}};
    for (const auto& l : r) plus.boundary.push_back({-1, l.sign});
    for (const auto& l : inverse(r)) minus.boundary.push_back({-1, l.sign});
    faces.push_back(std::move(plus));
    faces.push_back(std::move(minus));
  }
  auto plus_side = [&](const Occurrence& o) -> SlotDart& { return faces[2 * o.relator].boundary[o.position]; };
  auto minus_side = [&](const Occurrence& o) -> SlotDart& {
    const std::size_t n = p.relators()[o.relator].size();
    return faces[2 * o.relator + 1].boundary[n - 1 - o.position];
  };
  std::vector<int> labels;
  for (std::size_t g = 0; g < p.generator_count(); ++g) {
    const auto& list = occ[g];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int slot = static_cast<int>(labels.size());
      labels.push_back(static_cast<int>(g));
      plus_side(list[i]).slot = slot;
      minus_side(list[(i + 1) % list.size()]).slot = slot;
    }
  }

  // Keep the component through the first x-side of the polygon of r.
  UnionFind comp(faces.size());
  std::vector<int> first_face(labels.size(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (const auto& s : faces[f].boundary) {
      if (first_face[s.slot] < 0) first_face[s.slot] = static_cast<int>(f);
      else comp.unite(first_face[s.slot], static_cast<int>(f));
    }
  }
  const int root = comp.find(static_cast<int>(2 * occ[x].front().relator));
  std::vector<SlotFace> kept;
  std::map<int, int> slot_map;
  std::vector<int> kept_labels;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (comp.find(static_cast<int>(f)) != root) continue;
    SlotFace sf = faces[f];
    for (auto& s : sf.boundary) {
      auto [it, fresh] = slot_map.emplace(s.slot, static_cast<int>(kept_labels.size()));
      if (fresh) kept_labels.push_back(labels[s.slot]);
      s.slot = it->second;
    }
    kept.push_back(std::move(sf));
  }
  SurfaceDiagram surface = assemble(kept_labels, kept);
  if (!validate_diagram(surface, p).orientable) surface = orientation_double_cover(surface, p);
  return normalize_orientation(surface, p);
}

}  // namespace ddr
