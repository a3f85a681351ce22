#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ballsteinitz {

using VertexId = int;
using EdgeId = int;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

/// A directed edge-end: `edge` traversed starting at `tail`.
struct Dart {
  EdgeId edge = 0;
  VertexId tail = 0;

  auto operator<=>(const Dart&) const = default;
};

/// Boundary walk of one face. The face lies to the left of every dart.
struct Face {
  std::vector<Dart> darts;

  std::vector<VertexId> vertices() const;
  std::size_t size() const { return darts.size(); }
};

/// Plane graph stored as a rotation system: for every vertex the
/// counterclockwise cyclic order of its incident edge ids. Parallel edges and
/// degree-2 vertices are allowed; loops are not.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  /// Builds from counterclockwise neighbor lists. A neighbor repeated k times
  /// denotes k parallel edges; the i-th copy at `a` is paired with the
  /// (k-1-i)-th copy at `b`, which is the pairing of a digon bundle.
  static PlaneGraph from_neighbors(const std::map<VertexId, std::vector<VertexId>>& ccw);

  void add_vertex(VertexId v);
  /// Appends the new edge at the end of both rotations.
  EdgeId add_edge(VertexId u, VertexId v, std::optional<EdgeId> id = std::nullopt);
  void remove_edge(EdgeId e);
  /// Vertex must have no incident edges.
  void remove_vertex(VertexId v);
  void set_endpoints(EdgeId e, Edge ends);
  void set_rotation(VertexId v, std::vector<EdgeId> order);
  /// Replaces the single occurrence of `old_edge` in the rotation of `v`.
  void replace_in_rotation(VertexId v, EdgeId old_edge, const std::vector<EdgeId>& replacement);
  void insert_after(VertexId v, EdgeId predecessor, EdgeId e);
  void rename_vertex(VertexId from, VertexId to);
  void rename_edge(EdgeId from, EdgeId to);

  std::size_t vertex_count() const { return rotation_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_vertex(VertexId v) const { return rotation_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }
  const Edge& edge(EdgeId e) const;
  const std::vector<EdgeId>& rotation(VertexId v) const;
  std::size_t degree(VertexId v) const { return rotation(v).size(); }
  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edge_ids() const;
  std::vector<VertexId> neighbors(VertexId v) const;
  std::vector<EdgeId> edges_between(VertexId a, VertexId b) const;
  bool adjacent(VertexId a, VertexId b) const { return !edges_between(a, b).empty(); }

  VertexId head(Dart d) const { return edge(d.edge).other(d.tail); }
  Dart reverse(Dart d) const { return {d.edge, head(d)}; }
  /// Next dart along the face to the left of `d`.
  Dart next_in_face(Dart d) const;
  std::size_t position(VertexId v, EdgeId e) const;

  VertexId next_vertex_id() const;
  EdgeId next_edge_id() const;

  /// Every edge appears exactly once in each endpoint's rotation and nowhere else.
  void check_consistent() const;

  /// Equality of ids, endpoints and cyclic rotations.
  bool operator==(const PlaneGraph& other) const;

 private:
  std::map<VertexId, std::vector<EdgeId>> rotation_;
  std::map<EdgeId, Edge> edges_;
};

// ---------------------------------------------------------------------------
// Faces, duality, connectivity, standardness.

/// Faces in deterministic order (by smallest dart), each starting at its
/// smallest dart. Throws GraphError on an inconsistent rotation system.
std::vector<Face> faces(const PlaneGraph& g);

bool is_connected(const PlaneGraph& g);
/// Connected, consistent and V - E + F = 2.
bool is_plane(const PlaneGraph& g);
bool is_simple(const PlaneGraph& g);
/// Throws GraphError for non-simple input.
bool is_three_connected(const PlaneGraph& g);
bool is_standard_graph(const PlaneGraph& g);

/// Dual graph: vertex i is face i of faces(g); edge ids are shared with g.
PlaneGraph dual(const PlaneGraph& g);

/// Index into faces(g) of the face to the left of every dart.
std::map<Dart, std::size_t> left_face_index(const PlaneGraph& g, const std::vector<Face>& fs);

/// Face whose vertex set is exactly the triangle, oriented counterclockwise.
std::optional<Face> find_triangle_face(const PlaneGraph& g, const std::array<VertexId, 3>& corners);

// ---------------------------------------------------------------------------
// Delta-Y machinery.

enum class Direction { DeltaToY, YToDelta };
enum class SiteType { Y0, Y1, Y2, Y3, Delta0, Delta1, Delta2, Delta3 };

std::string to_string(Direction d);
std::string to_string(SiteType t);
Direction direction_from_string(const std::string& s);
SiteType site_type_from_string(const std::string& s);

/// Y class: number of edges among the three neighbors of a degree-3 vertex.
SiteType classify_y(const PlaneGraph& g, VertexId v);
/// Delta class: number of triangle corners of outer degree one.
SiteType classify_delta(const PlaneGraph& g, const Face& triangle);

struct Site {
  Direction direction = Direction::DeltaToY;
  VertexId vertex = -1;                      // YToDelta
  std::array<VertexId, 3> triangle{-1, -1, -1};  // DeltaToY, counterclockwise
};

/// Elementary operations. Each records enough to be undone exactly.
struct DeltaToYOp {
  std::array<VertexId, 3> corners;
  std::array<EdgeId, 3> sides;  // corners[i] -> corners[i+1]
  VertexId center;
  std::array<EdgeId, 3> spokes;  // center - corners[i]
};
struct YToDeltaOp {
  VertexId center;
  std::array<VertexId, 3> corners;  // counterclockwise around center
  std::array<EdgeId, 3> spokes;
  std::array<EdgeId, 3> sides;
};
/// Degree-2 vertex suppressed: `kept` takes over the far end of `removed`.
struct SeriesOp {
  VertexId vertex;
  EdgeId kept;
  EdgeId removed;
  Edge kept_before;
  Edge removed_before;
  std::vector<EdgeId> vertex_rotation;
};
/// Digon collapsed: `removed` deleted, `kept` survives.
struct ParallelOp {
  EdgeId kept;
  EdgeId removed;
  Edge removed_ends;
  EdgeId pred_at_u;
  EdgeId pred_at_v;
};
using ElementaryOp = std::variant<DeltaToYOp, YToDeltaOp, SeriesOp, ParallelOp>;

struct ReductionStep {
  Site site;
  SiteType site_type = SiteType::Y0;
  std::vector<ElementaryOp> ops;  // ops[0] is the Delta-Y operation, the rest SP-reductions

  std::vector<VertexId> added_vertices() const;
  std::vector<VertexId> removed_vertices() const;
  std::vector<EdgeId> added_edges() const;
  std::vector<EdgeId> removed_edges() const;
};

/// Explicit ids for the vertex/edges a Delta-Y operation creates.
struct NewIds {
  std::optional<VertexId> center;
  std::optional<std::array<EdgeId, 3>> edges;
};

/// Delta-Y operation at `site` followed by all SP-reductions then possible
/// (series before parallel, lowest vertex / edge id first).
std::pair<PlaneGraph, ReductionStep> simple_reduction(const PlaneGraph& g, const Site& site,
                                                      const NewIds& ids = {});

PlaneGraph apply_step(const PlaneGraph& pre, const ReductionStep& step);
PlaneGraph invert_step(const PlaneGraph& post, const ReductionStep& step);

// ---------------------------------------------------------------------------
// Subdivision and edge insertion inside a face.

/// Replaces edge e = {a, b} by {a, w} (id `id_at_a`) and {w, b} (id
/// `id_at_b`); one of the ids may equal e.
PlaneGraph subdivide(const PlaneGraph& g, EdgeId e, VertexId w, VertexId a, EdgeId id_at_a,
                     EdgeId id_at_b);
PlaneGraph subdivide(const PlaneGraph& g, EdgeId e);

enum class InsertVariant { I, II, III };

struct InsertIds {
  std::optional<VertexId> center;  // u3; needed when e13 and e32 are parallel
  std::optional<EdgeId> new_edge;
  std::optional<VertexId> first_vertex;   // subdivides {u1, u3}
  std::optional<EdgeId> first_far_edge;   // piece {w1, u1}
  std::optional<EdgeId> first_near_edge;  // piece {u3, w1}
  std::optional<VertexId> second_vertex;  // subdivides {u3, u2}
  std::optional<EdgeId> second_far_edge;
  std::optional<EdgeId> second_near_edge;
};

/// Works on the face where edges {u1, u3} and {u3, u2} are consecutive at u3.
/// I adds {u1, u2}; II subdivides {u1, u3} by w1 and adds {w1, u2}; III
/// subdivides both edges and joins the new vertices.
PlaneGraph add_edge_in_face(const PlaneGraph& g, InsertVariant variant, EdgeId e13, EdgeId e32,
                            const InsertIds& ids = {});

// ---------------------------------------------------------------------------
// Isomorphism.

using VertexMap = std::map<VertexId, VertexId>;

/// Canonical form of the underlying multigraph (vertex ids and embedding
/// ignored). Equal codes iff isomorphic.
std::string canonical_code(const PlaneGraph& g);
std::optional<VertexMap> isomorphism(const PlaneGraph& g, const PlaneGraph& h);
bool isomorphic(const PlaneGraph& g, const PlaneGraph& h);

struct PlaneMatch {
  VertexMap vertices;
  std::map<EdgeId, EdgeId> edges;
};

/// Combinatorial map isomorphism grown from `dg -> dh`; `mirror` reverses
/// the rotation direction.
std::optional<PlaneMatch> plane_isomorphism(const PlaneGraph& g, const PlaneGraph& h, Dart dg,
                                            Dart dh, bool mirror);
/// Tries every target dart and both orientations.
std::optional<PlaneMatch> plane_isomorphism(const PlaneGraph& g, const PlaneGraph& h);

// ---------------------------------------------------------------------------
// Small fixtures used by tests, the CLI and the realizer.
namespace graphs {
/// Rotation system of a straight-line plane drawing.
PlaneGraph from_drawing(const std::vector<std::array<double, 2>>& coords,
                        const std::vector<std::pair<VertexId, VertexId>>& edges);
PlaneGraph k4();
PlaneGraph triangle();
PlaneGraph prism(int n);  // n-gonal prism, n >= 3
PlaneGraph cube();
PlaneGraph octahedron();
PlaneGraph path(int n);
}  // namespace graphs

}  // namespace ballsteinitz
