#pragma once

// Independent oracles and random generators shared by the test suites.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ballsteinitz/plane_graph.hpp"
#include "ballsteinitz/reduction.hpp"

namespace testsupport {

using namespace ballsteinitz;

/// Adjacency-count matrix, vertices in sorted id order.
inline std::vector<std::vector<int>> adjacency_matrix(const PlaneGraph& g) {
  const auto vs = g.vertices();
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  std::vector<std::vector<int>> m(vs.size(), std::vector<int>(vs.size(), 0));
  for (EdgeId e : g.edge_ids()) {
    const Edge& ends = g.edge(e);
    ++m[index[ends.u]][index[ends.v]];
    ++m[index[ends.v]][index[ends.u]];
  }
  return m;
}

/// Isomorphism by trying every permutation. Only for small graphs.
inline bool brute_force_isomorphic(const PlaneGraph& g, const PlaneGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  const auto a = adjacency_matrix(g);
  const auto b = adjacency_matrix(h);
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a[i][j] == b[perm[i]][perm[j]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Checks that a claimed vertex map is a bijection preserving adjacency counts.
inline bool is_valid_isomorphism(const PlaneGraph& g, const PlaneGraph& h, const VertexMap& m) {
  if (m.size() != g.vertex_count() || g.vertex_count() != h.vertex_count()) return false;
  std::set<VertexId> image;
  for (const auto& [a, b] : m) {
    if (!g.has_vertex(a) || !h.has_vertex(b)) return false;
    image.insert(b);
  }
  if (image.size() != m.size()) return false;
  for (VertexId a : g.vertices())
    for (VertexId b : g.vertices())
      if (g.edges_between(a, b).size() != h.edges_between(m.at(a), m.at(b)).size()) return false;
  return true;
}

/// Rebuilds a graph under fresh vertex and edge ids, optionally starting each
/// rotation at a different position.
inline PlaneGraph relabel(const PlaneGraph& g, std::mt19937& rng) {
  auto vs = g.vertices();
  std::vector<VertexId> fresh(vs.size());
  std::iota(fresh.begin(), fresh.end(), 100);
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<VertexId, VertexId> vmap;
  for (std::size_t i = 0; i < vs.size(); ++i) vmap[vs[i]] = fresh[i];
  auto es = g.edge_ids();
  std::vector<EdgeId> efresh(es.size());
  std::iota(efresh.begin(), efresh.end(), 500);
  std::shuffle(efresh.begin(), efresh.end(), rng);
  std::map<EdgeId, EdgeId> emap;
  for (std::size_t i = 0; i < es.size(); ++i) emap[es[i]] = efresh[i];
  PlaneGraph out;
  for (VertexId v : vs) out.add_vertex(vmap[v]);
  for (EdgeId e : es) out.add_edge(vmap[g.edge(e).u], vmap[g.edge(e).v], emap[e]);
  for (VertexId v : vs) {
    std::vector<EdgeId> rot;
    for (EdgeId e : g.rotation(v)) rot.push_back(emap[e]);
    std::rotate(rot.begin(), rot.begin() + static_cast<long>(rng() % rot.size()), rot.end());
    out.set_rotation(vmap[v], rot);
  }
  return out;
}

/// Same graph with every rotation reversed (the mirror embedding).
inline PlaneGraph mirrored(const PlaneGraph& g) {
  PlaneGraph out = g;
  for (VertexId v : g.vertices()) {
    auto rot = g.rotation(v);
    std::reverse(rot.begin(), rot.end());
    out.set_rotation(v, rot);
  }
  return out;
}

/// Random 3-connected simple plane graph grown from K4 by face insertions and
/// Delta-Y moves. Every intermediate graph is checked.
inline PlaneGraph random_polyhedral(std::mt19937& rng, std::size_t min_vertices,
                                    std::size_t max_vertices) {
  PlaneGraph g = graphs::k4();
  const std::size_t target =
      min_vertices + rng() % (max_vertices - min_vertices + 1);
  int guard = 0;
  while (g.vertex_count() < target && ++guard < 1000) {
    PlaneGraph next;
    try {
      const int kind = static_cast<int>(rng() % 4);
      const auto fs = faces(g);
      if (kind == 0) {
        std::vector<Face> tris;
        for (const Face& f : fs)
          if (f.size() == 3) tris.push_back(f);
        if (tris.empty()) continue;
        const Face& f = tris[rng() % tris.size()];
        next = simple_reduction(g, {Direction::DeltaToY, -1,
                                    {f.darts[0].tail, f.darts[1].tail, f.darts[2].tail}})
                   .first;
      } else {
        const Face& f = fs[rng() % fs.size()];
        const std::size_t i = rng() % f.size();
        const Dart in = f.darts[i];
        const Dart out = f.darts[(i + 1) % f.size()];
        next = add_edge_in_face(g, static_cast<InsertVariant>(kind - 1), in.edge, out.edge);
      }
    } catch (const GraphError&) {
      continue;
    }
    if (!is_simple(next) || !is_plane(next) || !is_three_connected(next)) continue;
    g = next;
  }
  return g;
}

/// Graphs h with a simple reduction h -> g (up to isomorphism), among the
/// given candidates.
inline bool reduces_to(const PlaneGraph& h, const PlaneGraph& g) {
  for (VertexId v : h.vertices())
    if (h.degree(v) == 3) {
      const auto r = simple_reduction(h, {Direction::YToDelta, v, {}}).first;
      if (isomorphic(r, g)) return true;
    }
  for (const Face& f : faces(h))
    if (f.size() == 3) {
      const auto r =
          simple_reduction(h, {Direction::DeltaToY, -1, {f.darts[0].tail, f.darts[1].tail, f.darts[2].tail}})
              .first;
      if (isomorphic(r, g)) return true;
    }
  return false;
}

/// One random inverse simple reduction: a Delta-to-Y at a triangle followed
/// by up to three insertions at the new center, possibly carried out on the
/// dual. Returns nullopt when the draw is rejected.
inline std::optional<PlaneGraph> random_inverse_reduction(const PlaneGraph& g, std::mt19937& rng) {
  const bool via_dual = rng() % 2 == 1;
  const PlaneGraph base = via_dual ? dual(g) : g;
  std::vector<Face> tris;
  for (const Face& f : faces(base))
    if (f.size() == 3) tris.push_back(f);
  if (tris.empty()) return std::nullopt;
  const Face& t = tris[rng() % tris.size()];
  const VertexId center = base.next_vertex_id();
  PlaneGraph h;
  try {
    h = simple_reduction(base, {Direction::DeltaToY, -1, {t.darts[0].tail, t.darts[1].tail, t.darts[2].tail}},
                         NewIds{center, std::nullopt})
            .first;
    const int extra = static_cast<int>(rng() % 4);
    for (int k = 0; k < extra && h.has_vertex(center) && h.degree(center) == 3; ++k) {
      const auto rot = h.rotation(center);
      const std::size_t i = rng() % 3;
      InsertIds ids;
      ids.center = center;
      h = add_edge_in_face(h, static_cast<InsertVariant>(rng() % 3), rot[i], rot[(i + 1) % 3], ids);
    }
  } catch (const GraphError&) {
    return std::nullopt;
  }
  if (!is_simple(h) || !is_plane(h) || !is_three_connected(h)) return std::nullopt;
  PlaneGraph out = via_dual ? dual(h) : h;
  if (!is_simple(out) || !is_three_connected(out) || !reduces_to(out, g)) return std::nullopt;
  return out;
}

/// Grows K4 by `steps` random inverse simple reductions.
inline PlaneGraph random_by_inverse_reductions(std::mt19937& rng, int steps) {
  PlaneGraph g = graphs::k4();
  for (int done = 0, guard = 0; done < steps && guard < 10000; ++guard) {
    if (auto next = random_inverse_reduction(g, rng)) {
      g = *next;
      ++done;
    }
  }
  return g;
}

}  // namespace testsupport
