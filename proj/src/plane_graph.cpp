#include "ballsteinitz/plane_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace ballsteinitz {

namespace {

std::string vid(VertexId v) { return std::to_string(v); }

// Rotates a cyclic sequence so that its smallest element comes first.
std::vector<EdgeId> cyclic_normal(std::vector<EdgeId> seq) {
  if (seq.empty()) return seq;
  auto it = std::min_element(seq.begin(), seq.end());
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

}  // namespace

std::vector<VertexId> Face::vertices() const {
  std::vector<VertexId> out;
  out.reserve(darts.size());
  for (const Dart& d : darts) out.push_back(d.tail);
  return out;
}

// ---------------------------------------------------------------------------
// PlaneGraph

PlaneGraph PlaneGraph::from_neighbors(const std::map<VertexId, std::vector<VertexId>>& ccw) {
  PlaneGraph g;
  for (const auto& [v, nbrs] : ccw) g.add_vertex(v);
  std::map<VertexId, std::vector<EdgeId>> slots;
  for (const auto& [v, nbrs] : ccw) slots[v].assign(nbrs.size(), -1);

  EdgeId next = 0;
  for (const auto& [a, nbrs] : ccw) {
    std::map<VertexId, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] == a) throw GraphError("loop at vertex " + vid(a));
      if (!ccw.count(nbrs[i])) throw GraphError("unknown neighbor " + vid(nbrs[i]));
      positions[nbrs[i]].push_back(i);
    }
    for (const auto& [b, at_a] : positions) {
      if (b < a) continue;
      std::vector<std::size_t> at_b;
      const auto& nb = ccw.at(b);
      for (std::size_t j = 0; j < nb.size(); ++j)
        if (nb[j] == a) at_b.push_back(j);
      if (at_b.size() != at_a.size())
        throw GraphError("asymmetric adjacency between " + vid(a) + " and " + vid(b));
      const std::size_t k = at_a.size();
      for (std::size_t i = 0; i < k; ++i) {
        const EdgeId e = next++;
        g.edges_[e] = Edge{a, b};
        slots[a][at_a[i]] = e;
        slots[b][at_b[k - 1 - i]] = e;
      }
    }
  }
  for (auto& [v, order] : slots) g.rotation_[v] = order;
  return g;
}

void PlaneGraph::add_vertex(VertexId v) {
  if (rotation_.count(v)) throw GraphError("duplicate vertex " + vid(v));
  rotation_[v];
}

EdgeId PlaneGraph::add_edge(VertexId u, VertexId v, std::optional<EdgeId> id) {
  if (u == v) throw GraphError("loop at vertex " + vid(u));
  if (!has_vertex(u) || !has_vertex(v)) throw GraphError("edge endpoint missing");
  const EdgeId e = id.value_or(next_edge_id());
  if (edges_.count(e)) throw GraphError("duplicate edge id " + std::to_string(e));
  edges_[e] = Edge{u, v};
  rotation_[u].push_back(e);
  rotation_[v].push_back(e);
  return e;
}

void PlaneGraph::remove_edge(EdgeId e) {
  const Edge ends = edge(e);
  for (VertexId x : {ends.u, ends.v}) {
    auto& rot = rotation_.at(x);
    rot.erase(std::remove(rot.begin(), rot.end(), e), rot.end());
  }
  edges_.erase(e);
}

void PlaneGraph::remove_vertex(VertexId v) {
  if (!rotation(v).empty()) throw GraphError("removing non-isolated vertex " + vid(v));
  rotation_.erase(v);
}

void PlaneGraph::set_endpoints(EdgeId e, Edge ends) {
  if (!has_edge(e)) throw GraphError("unknown edge " + std::to_string(e));
  edges_[e] = ends;
}

void PlaneGraph::set_rotation(VertexId v, std::vector<EdgeId> order) {
  if (!has_vertex(v)) throw GraphError("unknown vertex " + vid(v));
  rotation_[v] = std::move(order);
}

void PlaneGraph::replace_in_rotation(VertexId v, EdgeId old_edge,
                                     const std::vector<EdgeId>& replacement) {
  auto& rot = rotation_.at(v);
  auto it = std::find(rot.begin(), rot.end(), old_edge);
  if (it == rot.end()) throw GraphError("edge not at vertex " + vid(v));
  it = rot.erase(it);
  rot.insert(it, replacement.begin(), replacement.end());
}

void PlaneGraph::insert_after(VertexId v, EdgeId predecessor, EdgeId e) {
  auto& rot = rotation_.at(v);
  auto it = std::find(rot.begin(), rot.end(), predecessor);
  if (it == rot.end()) throw GraphError("predecessor not at vertex " + vid(v));
  rot.insert(it + 1, e);
}

void PlaneGraph::rename_vertex(VertexId from, VertexId to) {
  if (from == to) return;
  if (has_vertex(to)) throw GraphError("vertex id in use " + vid(to));
  auto rot = rotation(from);
  rotation_.erase(from);
  rotation_[to] = rot;
  for (EdgeId e : rot) {
    Edge& ends = edges_.at(e);
    if (ends.u == from) ends.u = to;
    if (ends.v == from) ends.v = to;
  }
}

void PlaneGraph::rename_edge(EdgeId from, EdgeId to) {
  if (from == to) return;
  if (has_edge(to)) throw GraphError("edge id in use " + std::to_string(to));
  const Edge ends = edge(from);
  edges_.erase(from);
  edges_[to] = ends;
  for (VertexId x : {ends.u, ends.v})
    std::replace(rotation_.at(x).begin(), rotation_.at(x).end(), from, to);
}

const Edge& PlaneGraph::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw GraphError("unknown edge " + std::to_string(e));
  return it->second;
}

const std::vector<EdgeId>& PlaneGraph::rotation(VertexId v) const {
  auto it = rotation_.find(v);
  if (it == rotation_.end()) throw GraphError("unknown vertex " + vid(v));
  return it->second;
}

std::vector<VertexId> PlaneGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(rotation_.size());
  for (const auto& [v, rot] : rotation_) out.push_back(v);
  return out;
}

std::vector<EdgeId> PlaneGraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(edges_.size());
  for (const auto& [e, ends] : edges_) out.push_back(e);
  return out;
}

std::vector<VertexId> PlaneGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : rotation(v)) out.push_back(edge(e).other(v));
  return out;
}

std::vector<EdgeId> PlaneGraph::edges_between(VertexId a, VertexId b) const {
  std::vector<EdgeId> out;
  for (EdgeId e : rotation(a))
    if (edge(e).other(a) == b) out.push_back(e);
  return out;
}

std::size_t PlaneGraph::position(VertexId v, EdgeId e) const {
  const auto& rot = rotation(v);
  auto it = std::find(rot.begin(), rot.end(), e);
  if (it == rot.end())
    throw GraphError("edge " + std::to_string(e) + " not at vertex " + vid(v));
  return static_cast<std::size_t>(it - rot.begin());
}

Dart PlaneGraph::next_in_face(Dart d) const {
  const VertexId b = head(d);
  const auto& rot = rotation(b);
  const std::size_t idx = position(b, d.edge);
  const EdgeId next = rot[(idx + rot.size() - 1) % rot.size()];
  return {next, b};
}

VertexId PlaneGraph::next_vertex_id() const {
  return rotation_.empty() ? 0 : rotation_.rbegin()->first + 1;
}

EdgeId PlaneGraph::next_edge_id() const {
  return edges_.empty() ? 0 : edges_.rbegin()->first + 1;
}

void PlaneGraph::check_consistent() const {
  std::map<EdgeId, int> seen;
  for (const auto& [v, rot] : rotation_) {
    for (EdgeId e : rot) {
      auto it = edges_.find(e);
      if (it == edges_.end())
        throw GraphError("rotation of " + vid(v) + " lists unknown edge " + std::to_string(e));
      if (it->second.u != v && it->second.v != v)
        throw GraphError("edge " + std::to_string(e) + " listed at non-endpoint " + vid(v));
      ++seen[e];
    }
  }
  for (const auto& [e, ends] : edges_) {
    if (ends.u == ends.v) throw GraphError("loop edge " + std::to_string(e));
    if (seen[e] != 2)
      throw GraphError("edge " + std::to_string(e) + " appears " + std::to_string(seen[e]) +
                       " times in rotations");
  }
}

bool PlaneGraph::operator==(const PlaneGraph& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (const auto& [e, ends] : edges_) {
    auto it = other.edges_.find(e);
    if (it == other.edges_.end()) return false;
    if (std::minmax(ends.u, ends.v) != std::minmax(it->second.u, it->second.v)) return false;
  }
  if (rotation_.size() != other.rotation_.size()) return false;
  for (const auto& [v, rot] : rotation_) {
    auto it = other.rotation_.find(v);
    if (it == other.rotation_.end()) return false;
    if (cyclic_normal(rot) != cyclic_normal(it->second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Faces and global properties.

std::vector<Face> faces(const PlaneGraph& g) {
  g.check_consistent();
  std::vector<Dart> all;
  for (EdgeId e : g.edge_ids()) {
    const Edge& ends = g.edge(e);
    all.push_back({e, ends.u});
    all.push_back({e, ends.v});
  }
  std::sort(all.begin(), all.end());
  std::set<Dart> visited;
  std::vector<Face> out;
  for (const Dart& start : all) {
    if (visited.count(start)) continue;
    Face f;
    Dart d = start;
    do {
      if (!visited.insert(d).second) throw GraphError("face tracing revisited a dart");
      f.darts.push_back(d);
      d = g.next_in_face(d);
    } while (d != start);
    out.push_back(std::move(f));
  }
  return out;
}

std::map<Dart, std::size_t> left_face_index(const PlaneGraph&, const std::vector<Face>& fs) {
  std::map<Dart, std::size_t> out;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const Dart& d : fs[i].darts) out[d] = i;
  return out;
}

bool is_connected(const PlaneGraph& g) {
  const auto vs = g.vertices();
  if (vs.empty()) return true;
  std::set<VertexId> seen{vs.front()};
  std::deque<VertexId> queue{vs.front()};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbors(v))
      if (seen.insert(w).second) queue.push_back(w);
  }
  return seen.size() == vs.size();
}

bool is_plane(const PlaneGraph& g) {
  try {
    if (!is_connected(g)) return false;
    if (g.edge_count() == 0) return g.vertex_count() <= 1;
    const auto fs = faces(g);
    const long v = static_cast<long>(g.vertex_count());
    const long e = static_cast<long>(g.edge_count());
    return v - e + static_cast<long>(fs.size()) == 2;
  } catch (const GraphError&) {
    return false;
  }
}

bool is_simple(const PlaneGraph& g) {
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (EdgeId e : g.edge_ids()) {
    const Edge& ends = g.edge(e);
    if (ends.u == ends.v) return false;
    if (!pairs.insert(std::minmax(ends.u, ends.v)).second) return false;
  }
  return true;
}

bool is_three_connected(const PlaneGraph& g) {
  if (!is_simple(g)) throw GraphError("three-connectivity test needs a simple graph");
  const auto vs = g.vertices();
  if (vs.size() < 4) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const VertexId a = vs[i];
      const VertexId b = vs[j];
      VertexId start = -1;
      for (VertexId v : vs)
        if (v != a && v != b) {
          start = v;
          break;
        }
      std::set<VertexId> seen{a, b, start};
      std::deque<VertexId> queue{start};
      while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(v))
          if (seen.insert(w).second) queue.push_back(w);
      }
      if (seen.size() != vs.size()) return false;
    }
  }
  return true;
}

bool is_standard_graph(const PlaneGraph& g) {
  if (!is_simple(g)) return false;  // two parallel edges share both endpoints
  const auto fs = faces(g);
  std::vector<std::set<VertexId>> fv(fs.size());
  std::vector<std::set<EdgeId>> fe(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const Dart& d : fs[i].darts) {
      fv[i].insert(d.tail);
      fe[i].insert(d.edge);
    }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      std::vector<VertexId> common_v;
      std::set_intersection(fv[i].begin(), fv[i].end(), fv[j].begin(), fv[j].end(),
                            std::back_inserter(common_v));
      std::vector<EdgeId> common_e;
      std::set_intersection(fe[i].begin(), fe[i].end(), fe[j].begin(), fe[j].end(),
                            std::back_inserter(common_e));
      if (common_e.empty()) {
        if (common_v.size() > 1) return false;
      } else {
        if (common_e.size() != 1) return false;
        const Edge& ends = g.edge(common_e.front());
        if (common_v != std::vector<VertexId>{std::min(ends.u, ends.v), std::max(ends.u, ends.v)})
          return false;
      }
    }
  }
  return true;
}

PlaneGraph dual(const PlaneGraph& g) {
  const auto fs = faces(g);
  const auto left = left_face_index(g, fs);
  PlaneGraph d;
  for (std::size_t i = 0; i < fs.size(); ++i) d.add_vertex(static_cast<VertexId>(i));
  std::map<VertexId, std::vector<EdgeId>> rot;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const Dart& dt : fs[i].darts) rot[static_cast<VertexId>(i)].push_back(dt.edge);
  for (EdgeId e : g.edge_ids()) {
    const Edge& ends = g.edge(e);
    const auto a = static_cast<VertexId>(left.at({e, ends.u}));
    const auto b = static_cast<VertexId>(left.at({e, ends.v}));
    if (a == b) throw GraphError("bridge " + std::to_string(e) + " has no dual edge");
    d.add_edge(a, b, e);
  }
  for (auto& [v, order] : rot) d.set_rotation(v, order);
  return d;
}

std::optional<Face> find_triangle_face(const PlaneGraph& g,
                                       const std::array<VertexId, 3>& corners) {
  std::set<VertexId> want(corners.begin(), corners.end());
  if (want.size() != 3) return std::nullopt;
  for (const Face& f : faces(g)) {
    if (f.size() != 3) continue;
    const auto vs = f.vertices();
    if (std::set<VertexId>(vs.begin(), vs.end()) == want) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification.

std::string to_string(Direction d) { return d == Direction::DeltaToY ? "DeltaToY" : "YToDelta"; }

std::string to_string(SiteType t) {
  static const char* names[] = {"Y0", "Y1", "Y2", "Y3", "Delta0", "Delta1", "Delta2", "Delta3"};
  return names[static_cast<int>(t)];
}

Direction direction_from_string(const std::string& s) {
  if (s == "DeltaToY") return Direction::DeltaToY;
  if (s == "YToDelta") return Direction::YToDelta;
  throw GraphError("unknown direction " + s);
}

SiteType site_type_from_string(const std::string& s) {
  for (int i = 0; i < 8; ++i)
    if (to_string(static_cast<SiteType>(i)) == s) return static_cast<SiteType>(i);
  throw GraphError("unknown site type " + s);
}

SiteType classify_y(const PlaneGraph& g, VertexId v) {
  if (g.degree(v) != 3) throw GraphError("Y site " + vid(v) + " does not have degree 3");
  const auto nb = g.neighbors(v);
  if (nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2])
    throw GraphError("Y site " + vid(v) + " has repeated neighbors");
  std::size_t internal = g.edges_between(nb[0], nb[1]).size() +
                         g.edges_between(nb[1], nb[2]).size() +
                         g.edges_between(nb[0], nb[2]).size();
  if (internal > 3) throw GraphError("Y site has more than three internal edges");
  return static_cast<SiteType>(internal);
}

SiteType classify_delta(const PlaneGraph& g, const Face& triangle) {
  if (triangle.size() != 3) throw GraphError("Delta site is not a triangle");
  const auto cs = triangle.vertices();
  int ones = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t internal = 0;
    for (int j = 0; j < 3; ++j)
      if (j != i) internal += g.edges_between(cs[i], cs[j]).size();
    if (g.degree(cs[i]) - internal == 1) ++ones;
  }
  return static_cast<SiteType>(static_cast<int>(SiteType::Delta0) + ones);
}

// ---------------------------------------------------------------------------
// Elementary operations.

namespace {

// Rotation of `v` with `first` moved to the front.
std::vector<EdgeId> rotated_to(const PlaneGraph& g, VertexId v, EdgeId first) {
  auto rot = g.rotation(v);
  const std::size_t p = g.position(v, first);
  std::rotate(rot.begin(), rot.begin() + static_cast<long>(p), rot.end());
  return rot;
}

void apply_op(PlaneGraph& g, const DeltaToYOp& op) {
  std::map<VertexId, std::vector<EdgeId>> rewritten;
  for (int i = 0; i < 3; ++i) {
    const VertexId c = op.corners[i];
    auto rot = rotated_to(g, c, op.sides[i]);
    if (rot.size() < 2 || rot[1] != op.sides[(i + 2) % 3])
      throw GraphError("triangle sides not consecutive at corner " + vid(c));
    rot.erase(rot.begin(), rot.begin() + 2);
    rot.insert(rot.begin(), op.spokes[i]);
    rewritten[c] = rot;
  }
  for (EdgeId s : op.sides) g.remove_edge(s);
  g.add_vertex(op.center);
  for (int i = 0; i < 3; ++i) g.add_edge(op.center, op.corners[i], op.spokes[i]);
  for (const auto& [c, rot] : rewritten) g.set_rotation(c, rot);
  g.set_rotation(op.center, {op.spokes[0], op.spokes[1], op.spokes[2]});
}

void apply_op(PlaneGraph& g, const YToDeltaOp& op) {
  std::map<VertexId, std::vector<EdgeId>> rewritten;
  for (int i = 0; i < 3; ++i) {
    const VertexId c = op.corners[i];
    auto rot = rotated_to(g, c, op.spokes[i]);
    rot.erase(rot.begin());
    rot.insert(rot.begin(), {op.sides[i], op.sides[(i + 2) % 3]});
    rewritten[c] = rot;
  }
  for (EdgeId s : op.spokes) g.remove_edge(s);
  g.remove_vertex(op.center);
  for (int i = 0; i < 3; ++i) g.add_edge(op.corners[i], op.corners[(i + 1) % 3], op.sides[i]);
  for (const auto& [c, rot] : rewritten) g.set_rotation(c, rot);
}

void apply_op(PlaneGraph& g, const SeriesOp& op) {
  const Edge removed = g.edge(op.removed);
  const VertexId far = removed.other(op.vertex);
  Edge kept = g.edge(op.kept);
  if (kept.u == op.vertex)
    kept.u = far;
  else
    kept.v = far;
  auto far_rot = g.rotation(far);
  std::replace(far_rot.begin(), far_rot.end(), op.removed, op.kept);
  const VertexId near = op.kept_before.other(op.vertex);
  auto near_rot = g.rotation(near);
  g.remove_edge(op.removed);
  g.remove_edge(op.kept);
  g.remove_vertex(op.vertex);
  g.add_edge(kept.u, kept.v, op.kept);
  g.set_rotation(far, far_rot);
  g.set_rotation(near, near_rot);
}

void apply_op(PlaneGraph& g, const ParallelOp& op) { g.remove_edge(op.removed); }

void undo_op(PlaneGraph& g, const DeltaToYOp& op) {
  apply_op(g, YToDeltaOp{op.center, op.corners, op.spokes, op.sides});
}

void undo_op(PlaneGraph& g, const YToDeltaOp& op) {
  apply_op(g, DeltaToYOp{op.corners, op.sides, op.center, op.spokes});
}

void undo_op(PlaneGraph& g, const SeriesOp& op) {
  const VertexId near = op.kept_before.other(op.vertex);
  const VertexId far = op.removed_before.other(op.vertex);
  auto near_rot = g.rotation(near);
  auto far_rot = g.rotation(far);
  std::replace(far_rot.begin(), far_rot.end(), op.kept, op.removed);
  g.remove_edge(op.kept);
  g.add_vertex(op.vertex);
  g.add_edge(op.kept_before.u, op.kept_before.v, op.kept);
  g.add_edge(op.removed_before.u, op.removed_before.v, op.removed);
  g.set_rotation(op.vertex, op.vertex_rotation);
  g.set_rotation(near, near_rot);
  g.set_rotation(far, far_rot);
}

void undo_op(PlaneGraph& g, const ParallelOp& op) {
  auto ru = g.rotation(op.removed_ends.u);
  auto rv = g.rotation(op.removed_ends.v);
  g.add_edge(op.removed_ends.u, op.removed_ends.v, op.removed);
  g.set_rotation(op.removed_ends.u, ru);
  g.set_rotation(op.removed_ends.v, rv);
  g.insert_after(op.removed_ends.u, op.pred_at_u, op.removed);
  g.insert_after(op.removed_ends.v, op.pred_at_v, op.removed);
}

EdgeId predecessor(const PlaneGraph& g, VertexId v, EdgeId e) {
  const auto& rot = g.rotation(v);
  const std::size_t p = g.position(v, e);
  return rot[(p + rot.size() - 1) % rot.size()];
}

// Applies SP-reductions until none is possible; returns the recorded ops.
std::vector<ElementaryOp> sp_reduce(PlaneGraph& g) {
  std::vector<ElementaryOp> ops;
  for (;;) {
    bool done = false;
    for (VertexId v : g.vertices()) {
      if (g.degree(v) != 2) continue;
      const auto rot = g.rotation(v);
      const Edge ea = g.edge(rot[0]);
      const Edge eb = g.edge(rot[1]);
      if (ea.other(v) == eb.other(v)) continue;  // would create a loop
      SeriesOp op;
      op.vertex = v;
      op.kept = std::min(rot[0], rot[1]);
      op.removed = std::max(rot[0], rot[1]);
      op.kept_before = g.edge(op.kept);
      op.removed_before = g.edge(op.removed);
      op.vertex_rotation = rot;
      apply_op(g, op);
      ops.emplace_back(op);
      done = true;
      break;
    }
    if (done) continue;
    const auto fs = faces(g);
    std::optional<std::pair<EdgeId, EdgeId>> best;
    for (const Face& f : fs) {
      if (f.size() != 2) continue;
      if (g.edge_count() <= 3) break;  // keep the three-edge theta graph
      const EdgeId a = std::min(f.darts[0].edge, f.darts[1].edge);
      const EdgeId b = std::max(f.darts[0].edge, f.darts[1].edge);
      if (!best || a < best->first) best = std::make_pair(a, b);
    }
    if (!best) break;
    ParallelOp op;
    op.kept = best->first;
    op.removed = best->second;
    op.removed_ends = g.edge(op.removed);
    op.pred_at_u = predecessor(g, op.removed_ends.u, op.removed);
    op.pred_at_v = predecessor(g, op.removed_ends.v, op.removed);
    apply_op(g, op);
    ops.emplace_back(op);
  }
  return ops;
}

}  // namespace

std::vector<VertexId> ReductionStep::added_vertices() const {
  std::set<VertexId> added, removed;
  for (const auto& op : ops) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, DeltaToYOp>) {
            added.insert(o.center);
          } else if constexpr (std::is_same_v<T, YToDeltaOp>) {
            if (!added.erase(o.center)) removed.insert(o.center);
          } else if constexpr (std::is_same_v<T, SeriesOp>) {
            if (!added.erase(o.vertex)) removed.insert(o.vertex);
          }
        },
        op);
  }
  return {added.begin(), added.end()};
}

std::vector<VertexId> ReductionStep::removed_vertices() const {
  std::set<VertexId> added, removed;
  for (const auto& op : ops) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, DeltaToYOp>) {
            added.insert(o.center);
          } else if constexpr (std::is_same_v<T, YToDeltaOp>) {
            if (!added.erase(o.center)) removed.insert(o.center);
          } else if constexpr (std::is_same_v<T, SeriesOp>) {
            if (!added.erase(o.vertex)) removed.insert(o.vertex);
          }
        },
        op);
  }
  return {removed.begin(), removed.end()};
}

namespace {
void edge_delta(const ReductionStep& step, std::set<EdgeId>& added, std::set<EdgeId>& removed) {
  auto add = [&](EdgeId e) {
    if (!removed.erase(e)) added.insert(e);
  };
  auto remove = [&](EdgeId e) {
    if (!added.erase(e)) removed.insert(e);
  };
  for (const auto& op : step.ops) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, DeltaToYOp>) {
            for (EdgeId e : o.sides) remove(e);
            for (EdgeId e : o.spokes) add(e);
          } else if constexpr (std::is_same_v<T, YToDeltaOp>) {
            for (EdgeId e : o.spokes) remove(e);
            for (EdgeId e : o.sides) add(e);
          } else {
            remove(o.removed);
          }
        },
        op);
  }
}
}  // namespace

std::vector<EdgeId> ReductionStep::added_edges() const {
  std::set<EdgeId> a, r;
  edge_delta(*this, a, r);
  return {a.begin(), a.end()};
}

std::vector<EdgeId> ReductionStep::removed_edges() const {
  std::set<EdgeId> a, r;
  edge_delta(*this, a, r);
  return {r.begin(), r.end()};
}

std::pair<PlaneGraph, ReductionStep> simple_reduction(const PlaneGraph& g, const Site& site,
                                                      const NewIds& ids) {
  ReductionStep step;
  step.site = site;
  PlaneGraph out = g;
  if (site.direction == Direction::DeltaToY) {
    auto face = find_triangle_face(g, site.triangle);
    if (!face) throw GraphError("Delta site is not a triangular face");
    step.site_type = classify_delta(g, *face);
    DeltaToYOp op;
    for (int i = 0; i < 3; ++i) {
      op.corners[i] = face->darts[i].tail;
      op.sides[i] = face->darts[i].edge;
    }
    step.site.triangle = op.corners;
    op.center = ids.center.value_or(g.next_vertex_id());
    if (g.has_vertex(op.center)) throw GraphError("center id in use");
    const EdgeId base = g.next_edge_id();
    op.spokes = ids.edges.value_or(std::array<EdgeId, 3>{base, base + 1, base + 2});
    apply_op(out, op);
    step.ops.emplace_back(op);
  } else {
    const VertexId v = site.vertex;
    step.site_type = classify_y(g, v);
    YToDeltaOp op;
    op.center = v;
    const auto& rot = g.rotation(v);
    for (int i = 0; i < 3; ++i) {
      op.spokes[i] = rot[i];
      op.corners[i] = g.edge(rot[i]).other(v);
    }
    const EdgeId base = g.next_edge_id();
    op.sides = ids.edges.value_or(std::array<EdgeId, 3>{base, base + 1, base + 2});
    for (EdgeId e : op.sides)
      if (g.has_edge(e) && std::find(op.spokes.begin(), op.spokes.end(), e) == op.spokes.end())
        throw GraphError("side id in use");
    apply_op(out, op);
    step.ops.emplace_back(op);
  }
  auto sp = sp_reduce(out);
  step.ops.insert(step.ops.end(), sp.begin(), sp.end());
  return {std::move(out), std::move(step)};
}

PlaneGraph apply_step(const PlaneGraph& pre, const ReductionStep& step) {
  PlaneGraph g = pre;
  for (const auto& op : step.ops) std::visit([&](const auto& o) { apply_op(g, o); }, op);
  return g;
}

PlaneGraph invert_step(const PlaneGraph& post, const ReductionStep& step) {
  PlaneGraph g = post;
  for (auto it = step.ops.rbegin(); it != step.ops.rend(); ++it)
    std::visit([&](const auto& o) { undo_op(g, o); }, *it);
  return g;
}

// ---------------------------------------------------------------------------
// Subdivision and insertion.

PlaneGraph subdivide(const PlaneGraph& g, EdgeId e, VertexId w, VertexId a, EdgeId id_at_a,
                     EdgeId id_at_b) {
  const Edge ends = g.edge(e);
  if (ends.u != a && ends.v != a) throw GraphError("subdivision anchor not on edge");
  const VertexId b = ends.other(a);
  if (id_at_a == id_at_b) throw GraphError("subdivision pieces need distinct ids");
  PlaneGraph out = g;
  auto ra = out.rotation(a);
  auto rb = out.rotation(b);
  std::replace(ra.begin(), ra.end(), e, id_at_a);
  std::replace(rb.begin(), rb.end(), e, id_at_b);
  out.remove_edge(e);
  for (EdgeId id : {id_at_a, id_at_b})
    if (out.has_edge(id)) throw GraphError("subdivision edge id in use");
  out.add_vertex(w);
  out.add_edge(a, w, id_at_a);
  out.add_edge(w, b, id_at_b);
  out.set_rotation(a, ra);
  out.set_rotation(b, rb);
  out.set_rotation(w, {id_at_a, id_at_b});
  return out;
}

PlaneGraph subdivide(const PlaneGraph& g, EdgeId e) {
  const Edge ends = g.edge(e);
  return subdivide(g, e, g.next_vertex_id(), ends.u, e, g.next_edge_id());
}

namespace {

// Inserts a new edge between the far ends of e13 and e32 inside the face
// where the two edges are consecutive at their common vertex.
PlaneGraph insert_chord(const PlaneGraph& g, EdgeId e13, EdgeId e32, EdgeId id) {
  const Edge a = g.edge(e13);
  const Edge b = g.edge(e32);
  VertexId u3;
  if (a.u == b.u || a.u == b.v)
    u3 = a.u;
  else if (a.v == b.u || a.v == b.v)
    u3 = a.v;
  else
    throw GraphError("edges do not share a vertex");
  const VertexId u1 = a.other(u3);
  const VertexId u2 = b.other(u3);
  if (u1 == u2) throw GraphError("edges are parallel");
  if (g.adjacent(u1, u2)) throw GraphError("endpoints already adjacent");
  // Face containing u2 -> u3 -> u1 or u1 -> u3 -> u2.
  std::optional<Dart> start;
  if (g.next_in_face({e32, u2}) == Dart{e13, u3})
    start = Dart{e32, u2};
  else if (g.next_in_face({e13, u1}) == Dart{e32, u3})
    start = Dart{e13, u1};
  else
    throw GraphError("edges are not consecutive on a face");
  // Collect, for u1 and u2, the face dart entering them.
  std::map<VertexId, EdgeId> entering;
  Dart d = *start;
  do {
    const VertexId h = g.head(d);
    if ((h == u1 || h == u2) && !entering.count(h)) entering[h] = d.edge;
    d = g.next_in_face(d);
  } while (d != *start);
  PlaneGraph out = g;
  auto r1 = out.rotation(u1);
  auto r2 = out.rotation(u2);
  out.add_edge(u1, u2, id);
  out.set_rotation(u1, r1);
  out.set_rotation(u2, r2);
  // Inside the face, the new edge precedes the entering edge in ccw order.
  for (VertexId x : {u1, u2}) {
    auto rot = out.rotation(x);
    auto it = std::find(rot.begin(), rot.end(), entering.at(x));
    rot.insert(it, id);
    out.set_rotation(x, rot);
  }
  return out;
}

VertexId common_vertex(const PlaneGraph& g, EdgeId e1, EdgeId e2) {
  const Edge a = g.edge(e1);
  const Edge b = g.edge(e2);
  if (a.u == b.u || a.u == b.v) return a.u;
  if (a.v == b.u || a.v == b.v) return a.v;
  throw GraphError("edges do not share a vertex");
}

}  // namespace

PlaneGraph add_edge_in_face(const PlaneGraph& g, InsertVariant variant, EdgeId e13, EdgeId e32,
                            const InsertIds& ids) {
  const VertexId u3 = ids.center.value_or(common_vertex(g, e13, e32));
  for (EdgeId e : {e13, e32})
    if (g.edge(e).u != u3 && g.edge(e).v != u3) throw GraphError("edge misses the center");
  PlaneGraph work = g;
  EdgeId near1 = e13;
  EdgeId near2 = e32;
  if (variant == InsertVariant::II || variant == InsertVariant::III) {
    const VertexId w = ids.first_vertex.value_or(work.next_vertex_id());
    const EdgeId far_id = ids.first_far_edge.value_or(e13);
    const EdgeId near_id =
        ids.first_near_edge.value_or(far_id == e13 ? work.next_edge_id() : e13);
    work = subdivide(work, e13, w, u3, near_id, far_id);
    near1 = near_id;
  }
  if (variant == InsertVariant::III) {
    const VertexId w = ids.second_vertex.value_or(work.next_vertex_id());
    const EdgeId far_id = ids.second_far_edge.value_or(e32);
    const EdgeId near_id =
        ids.second_near_edge.value_or(far_id == e32 ? work.next_edge_id() : e32);
    work = subdivide(work, e32, w, u3, near_id, far_id);
    near2 = near_id;
  }
  // The chord joins the far ends of the (possibly new) near pieces.
  const EdgeId id = ids.new_edge.value_or(work.next_edge_id());
  return insert_chord(work, near1, near2, id);
}

// ---------------------------------------------------------------------------
// Isomorphism by individualization-refinement.

namespace {

struct Canonical {
  std::string code;
  std::vector<VertexId> order;  // vertex at each canonical position
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const PlaneGraph& g) : ids_(g.vertices()) {
    const std::size_t n = ids_.size();
    std::map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[ids_[i]] = i;
    adj_.assign(n, std::vector<int>(n, 0));
    for (EdgeId e : g.edge_ids()) {
      const Edge& ends = g.edge(e);
      const std::size_t a = index.at(ends.u);
      const std::size_t b = index.at(ends.v);
      ++adj_[a][b];
      ++adj_[b][a];
    }
    nbrs_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (adj_[i][j] > 0) nbrs_[i].push_back(j);
  }

  Canonical run() {
    std::vector<int> colors(ids_.size(), 0);
    search(colors);
    Canonical out;
    out.code = best_code_;
    for (std::size_t pos : best_order_) out.order.push_back(ids_[pos]);
    if (ids_.empty()) out.code = std::string(1, '\0');
    return out;
  }

 private:
  // Equitable refinement; colors stay ordered canonically.
  void refine(std::vector<int>& colors) const {
    const std::size_t n = colors.size();
    std::size_t count = std::set<int>(colors.begin(), colors.end()).size();
    for (;;) {
      std::vector<std::vector<int>> keys(n);
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::pair<int, int>> sig;
        for (std::size_t w : nbrs_[v]) sig.emplace_back(colors[w], adj_[v][w]);
        std::sort(sig.begin(), sig.end());
        keys[v].push_back(colors[v]);
        for (auto [c, m] : sig) {
          keys[v].push_back(c);
          keys[v].push_back(m);
        }
      }
      std::vector<std::vector<int>> distinct = keys;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (std::size_t v = 0; v < n; ++v)
        colors[v] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), keys[v]) - distinct.begin());
      if (distinct.size() == count) return;
      count = distinct.size();
    }
  }

  void search(std::vector<int> colors) {
    refine(colors);
    const std::size_t n = colors.size();
    std::map<int, std::vector<std::size_t>> cells;
    for (std::size_t v = 0; v < n; ++v) cells[colors[v]].push_back(v);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        break;
      }
    if (!target) {
      std::vector<std::size_t> order(n);
      for (std::size_t v = 0; v < n; ++v) order[static_cast<std::size_t>(colors[v])] = v;
      std::string code;
      code.push_back(static_cast<char>(n & 0xff));
      code.push_back(static_cast<char>((n >> 8) & 0xff));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          code.push_back(static_cast<char>(adj_[order[i]][order[j]]));
      if (!have_best_) {
        have_best_ = true;
        best_code_ = code;
        best_order_ = order;
      } else if (code < best_code_) {
        best_code_ = code;
        best_order_ = order;
      }
      return;
    }
    const std::vector<std::size_t> cell = *target;
    for (std::size_t chosen : cell) {
      std::vector<int> next(n);
      for (std::size_t v = 0; v < n; ++v) {
        const bool demote = colors[v] == colors[chosen] && v != chosen;
        next[v] = 2 * colors[v] + (demote ? 1 : 0);
      }
      search(next);
    }
  }

  std::vector<VertexId> ids_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
  bool have_best_ = false;
  std::string best_code_;
  std::vector<std::size_t> best_order_;
};

}  // namespace

std::string canonical_code(const PlaneGraph& g) { return Canonicalizer(g).run().code; }

std::optional<VertexMap> isomorphism(const PlaneGraph& g, const PlaneGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  const Canonical cg = Canonicalizer(g).run();
  const Canonical ch = Canonicalizer(h).run();
  if (cg.code != ch.code) return std::nullopt;
  VertexMap out;
  for (std::size_t i = 0; i < cg.order.size(); ++i) out[cg.order[i]] = ch.order[i];
  return out;
}

bool isomorphic(const PlaneGraph& g, const PlaneGraph& h) { return isomorphism(g, h).has_value(); }

std::optional<PlaneMatch> plane_isomorphism(const PlaneGraph& g, const PlaneGraph& h, Dart dg,
                                            Dart dh, bool mirror) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  PlaneMatch m;
  std::set<VertexId> used_v;
  std::set<EdgeId> used_e;
  std::deque<std::pair<Dart, Dart>> queue{{dg, dh}};
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    const VertexId x = a.tail;
    const VertexId y = b.tail;
    if (auto it = m.vertices.find(x); it != m.vertices.end()) {
      if (it->second != y) return std::nullopt;
      if (m.edges.at(a.edge) != b.edge) return std::nullopt;
      continue;
    }
    if (used_v.count(y)) return std::nullopt;
    const auto& rx = g.rotation(x);
    const auto& ry = h.rotation(y);
    if (rx.size() != ry.size()) return std::nullopt;
    m.vertices[x] = y;
    used_v.insert(y);
    const std::size_t d = rx.size();
    const std::size_t i = g.position(x, a.edge);
    const std::size_t j = h.position(y, b.edge);
    for (std::size_t k = 0; k < d; ++k) {
      const EdgeId ex = rx[(i + k) % d];
      const EdgeId ey = ry[mirror ? (j + d - k) % d : (j + k) % d];
      if (auto it = m.edges.find(ex); it != m.edges.end()) {
        if (it->second != ey) return std::nullopt;
      } else {
        if (used_e.count(ey)) return std::nullopt;
        m.edges[ex] = ey;
        used_e.insert(ey);
      }
      queue.emplace_back(Dart{ex, g.edge(ex).other(x)}, Dart{ey, h.edge(ey).other(y)});
    }
  }
  if (m.vertices.size() != g.vertex_count() || m.edges.size() != g.edge_count())
    return std::nullopt;
  return m;
}

std::optional<PlaneMatch> plane_isomorphism(const PlaneGraph& g, const PlaneGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  if (g.edge_count() == 0) {
    if (g.vertex_count() == 0) return PlaneMatch{};
    if (g.vertex_count() == 1) return PlaneMatch{{{g.vertices()[0], h.vertices()[0]}}, {}};
    return std::nullopt;
  }
  const EdgeId e0 = g.edge_ids().front();
  const Dart dg{e0, g.edge(e0).u};
  for (EdgeId f : h.edge_ids()) {
    const Edge& ends = h.edge(f);
    for (VertexId t : {ends.u, ends.v})
      for (bool mirror : {false, true})
        if (auto m = plane_isomorphism(g, h, dg, Dart{f, t}, mirror)) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fixtures.

namespace graphs {

PlaneGraph from_drawing(const std::vector<std::array<double, 2>>& coords,
                        const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::map<VertexId, std::vector<std::pair<double, VertexId>>> around;
  for (std::size_t v = 0; v < coords.size(); ++v) around[static_cast<VertexId>(v)];
  for (auto [a, b] : edges) {
    const auto& pa = coords.at(static_cast<std::size_t>(a));
    const auto& pb = coords.at(static_cast<std::size_t>(b));
    around[a].emplace_back(std::atan2(pb[1] - pa[1], pb[0] - pa[0]), b);
    around[b].emplace_back(std::atan2(pa[1] - pb[1], pa[0] - pb[0]), a);
  }
  std::map<VertexId, std::vector<VertexId>> ccw;
  for (auto& [v, list] : around) {
    std::sort(list.begin(), list.end());
    for (const auto& item : list) ccw[v].push_back(item.second);
  }
  return PlaneGraph::from_neighbors(ccw);
}

namespace {
std::array<double, 2> polar(double r, double angle) {
  return {r * std::cos(angle), r * std::sin(angle)};
}
}  // namespace

PlaneGraph k4() {
  const double pi = std::acos(-1.0);
  std::vector<std::array<double, 2>> c{polar(2, pi / 2), polar(2, pi / 2 + 2 * pi / 3),
                                       polar(2, pi / 2 + 4 * pi / 3), {0, 0}};
  return from_drawing(c, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
}

PlaneGraph triangle() {
  return from_drawing({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
}

PlaneGraph prism(int n) {
  if (n < 3) throw GraphError("prism needs n >= 3");
  const double pi = std::acos(-1.0);
  std::vector<std::array<double, 2>> c;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < n; ++i) c.push_back(polar(1, 2 * pi * i / n));
  for (int i = 0; i < n; ++i) c.push_back(polar(2, 2 * pi * i / n));
  for (int i = 0; i < n; ++i) {
    e.emplace_back(i, (i + 1) % n);
    e.emplace_back(n + i, n + (i + 1) % n);
    e.emplace_back(i, n + i);
  }
  return from_drawing(c, e);
}

PlaneGraph cube() { return prism(4); }

PlaneGraph octahedron() {
  const double pi = std::acos(-1.0);
  std::vector<std::array<double, 2>> c;
  for (int i = 0; i < 3; ++i) c.push_back(polar(1, pi / 3 + 2 * pi * i / 3));
  for (int i = 0; i < 3; ++i) c.push_back(polar(3, 2 * pi * i / 3));
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < 3; ++i) {
    e.emplace_back(i, (i + 1) % 3);
    e.emplace_back(3 + i, 3 + (i + 1) % 3);
    e.emplace_back(i, 3 + i);
    e.emplace_back(i, 3 + (i + 1) % 3);
  }
  return from_drawing(c, e);
}

PlaneGraph path(int n) {
  std::vector<std::array<double, 2>> c;
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < n; ++i) c.push_back({static_cast<double>(i), 0.0});
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_drawing(c, e);
}

}  // namespace graphs

}  // namespace ballsteinitz
