#include "ballsteinitz/realizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ballsteinitz {

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::RemoveBall: return "RemoveBall";
    case MoveKind::AddRotatedBall: return "AddRotatedBall";
    case MoveKind::DualizeIn: return "DualizeIn";
    case MoveKind::DualizeOut: return "DualizeOut";
  }
  return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
  for (MoveKind k : {MoveKind::RemoveBall, MoveKind::AddRotatedBall, MoveKind::DualizeIn,
                     MoveKind::DualizeOut})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown move kind: " + s);
}

std::string to_string(InsertVariant v) {
  switch (v) {
    case InsertVariant::I: return "I";
    case InsertVariant::II: return "II";
    case InsertVariant::III: return "III";
  }
  return "?";
}

InsertVariant insert_variant_from_string(const std::string& s) {
  for (InsertVariant v : {InsertVariant::I, InsertVariant::II, InsertVariant::III})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown insertion variant: " + s);
}

namespace {

std::vector<Dart> darts_of(const PlaneGraph& g) {
  std::vector<Dart> out;
  for (EdgeId e : g.edge_ids()) {
    out.push_back({e, g.edge(e).u});
    out.push_back({e, g.edge(e).v});
  }
  return out;
}

// Best plane isomorphism expected -> actual, scored by agreement with hints.
std::optional<PlaneMatch> best_match(const PlaneGraph& expected, const PlaneGraph& actual,
                                     const std::map<VertexId, int>& vertex_hint,
                                     const std::map<EdgeId, int>& edge_hint) {
  if (expected.vertex_count() != actual.vertex_count() ||
      expected.edge_count() != actual.edge_count() || expected.edge_count() == 0)
    return std::nullopt;
  const VertexId v0 = expected.vertices().front();
  const Dart seed{expected.rotation(v0).front(), v0};
  std::optional<PlaneMatch> best;
  long best_score = -1;
  for (bool mirror : {false, true}) {
    for (const Dart& d : darts_of(actual)) {
      auto m = plane_isomorphism(expected, actual, seed, d, mirror);
      if (!m) continue;
      long score = 0;
      for (const auto& [v, c] : vertex_hint) {
        auto it = m->vertices.find(v);
        if (it != m->vertices.end() && it->second == c) ++score;
      }
      for (const auto& [e, c] : edge_hint) {
        auto it = m->edges.find(e);
        if (it != m->edges.end() && it->second == c) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = std::move(m);
      }
    }
  }
  return best;
}

// Complex vertex hints from positions that survive a move.
std::map<VertexId, int> position_hints(const RealizationState& before,
                                       const BoundaryComplex& after) {
  std::map<VertexId, int> out;
  for (const auto& [v, idx] : before.vertex_of) {
    const Point3& p = before.complex.vertices.at(static_cast<std::size_t>(idx)).point;
    for (std::size_t i = 0; i < after.vertices.size(); ++i)
      if ((after.vertices[i].point - p).norm() < after.tol.eps_feature) {
        out[v] = static_cast<int>(i);
        break;
      }
  }
  return out;
}

// Candidate state for a new center set, or nullopt if it does not realize
// `expected`.
std::optional<RealizationState> try_centers(const RealizationState& s, const BallPolyhedron& p,
                                            const PlaneGraph& expected) {
  try {
    validate_polyhedron(p);
    RealizationState next;
    next.polyhedron = p;
    next.complex = compute_boundary(p);
    next.history = s.history;
    bind_target(next, expected, position_hints(s, next.complex));
    return next;
  } catch (const GeometryError&) {
  } catch (const GraphError&) {
  } catch (const RealizationError&) {
  }
  return std::nullopt;
}

std::array<int, 2> edge_spheres(const RealizationState& s, EdgeId e) {
  return s.complex.edges.at(static_cast<std::size_t>(s.edge_of.at(e))).spheres;
}

}  // namespace

void bind_target(RealizationState& s, const PlaneGraph& expected,
          const std::map<VertexId, int>& vertex_hint, const std::map<EdgeId, int>& edge_hint) {
  PlaneGraph actual;
  try {
    actual = edge_graph(s.complex);
  } catch (const GeometryError& e) {
    throw RealizationError(std::string("complex has no plane edge-graph: ") + e.what());
  }
  auto m = best_match(expected, actual, vertex_hint, edge_hint);
  if (!m) throw RealizationError("edge-graph does not match the expected graph");
  if (is_simple(expected) && is_standard_graph(expected)) {
    const auto cert = is_standard_polyhedron(s.complex);
    if (!cert.standard)
      throw RealizationError("complex is not standard: " + cert.violations.front());
  }
  s.target = expected;
  s.vertex_of.clear();
  s.edge_of.clear();
  for (const auto& [v, c] : m->vertices) s.vertex_of[v] = c;
  for (const auto& [e, c] : m->edges) s.edge_of[e] = c;
}

RealizationState seed_k4(const RealizerOptions& opts) {
  RealizationState s;
  s.polyhedron.tol = opts.tol;
  const double a = 0.6 / (2.0 * std::sqrt(2.0));
  s.polyhedron.centers = {{0, Point3(a, a, a)},
                          {1, Point3(a, -a, -a)},
                          {2, Point3(-a, a, -a)},
                          {3, Point3(-a, -a, a)}};
  validate_polyhedron(s.polyhedron);
  s.complex = compute_boundary(s.polyhedron);
  bind_target(s, graphs::k4());
  return s;
}

int face_sphere(const RealizationState& s, const Face& f) {
  std::set<int> common;
  for (std::size_t i = 0; i < f.darts.size(); ++i) {
    const auto sp = edge_spheres(s, f.darts[i].edge);
    std::set<int> pair{sp[0], sp[1]};
    if (i == 0) {
      common = pair;
    } else {
      std::set<int> both;
      std::set_intersection(common.begin(), common.end(), pair.begin(), pair.end(),
                            std::inserter(both, both.end()));
      common = both;
    }
  }
  if (common.size() != 1) throw RealizationError("face is not carried by a single sphere");
  return *common.begin();
}

RealizationState remove_triangle_ball(const RealizationState& s,
                                      const std::array<VertexId, 3>& corners, const NewIds& ids,
                                      const RealizerOptions& opts) {
  const auto tri = find_triangle_face(s.target, corners);
  if (!tri) throw RealizationError("no triangular face on the given corners");
  const int lambda = face_sphere(s, *tri);
  const auto& cface = s.complex.faces.at(static_cast<std::size_t>(s.complex.face_index(lambda)));
  if (cface.cycles.size() != 1 || cface.cycles.front().edges.size() != 3)
    throw RealizationError("face of the removed ball is not a triangle");

  std::vector<int> neighbours;
  for (const Dart& d : tri->darts) {
    const auto sp = edge_spheres(s, d.edge);
    neighbours.push_back(sp[0] == lambda ? sp[1] : sp[0]);
  }
  const Site site{Direction::DeltaToY, -1, {tri->darts[0].tail, tri->darts[1].tail, tri->darts[2].tail}};
  const PlaneGraph expected = simple_reduction(s.target, site, ids).first;

  BallPolyhedron p = s.polyhedron;
  const Point3 x_lambda = p.centers.at(lambda);
  p.centers.erase(lambda);
  p.tol = opts.tol;
  auto next = try_centers(s, p, expected);
  if (!next)
    throw RealizationError("removing ball " + std::to_string(lambda) +
                           " does not give the simple Delta-to-Y reduction");

  const auto tp = triple_sphere_points(p.centers.at(neighbours[0]), p.centers.at(neighbours[1]),
                                       p.centers.at(neighbours[2]), opts.tol);
  if (tp.kind != TriplePoints::Kind::Pair)
    throw RealizationError("neighbouring spheres do not meet in two points");
  auto is_new_vertex = [&](const Point3& q) {
    bool now = false;
    for (const auto& v : next->complex.vertices) now = now || (v.point - q).norm() < opts.tol.eps_feature;
    bool before = false;
    for (const auto& v : s.complex.vertices)
      before = before || (v.point - q).norm() < opts.tol.eps_feature;
    return now && !before;
  };
  auto strictly_inside = [&](const Point3& q) {
    return (q - x_lambda).norm() < 1.0 - opts.tol.eps_geom;
  };
  const bool ok = (is_new_vertex(tp.q) && strictly_inside(tp.qbar)) !=
                  (is_new_vertex(tp.qbar) && strictly_inside(tp.q));
  if (!ok) throw RealizationError("new boundary does not contain exactly one common point");

  GeometricMove mv;
  mv.kind = MoveKind::RemoveBall;
  mv.ball = lambda;
  mv.center = x_lambda;
  next->history.push_back(mv);
  return *next;
}

RealizationState add_rotated_ball(const RealizationState& s, const InsertionSite& site,
                                  const RealizerOptions& opts) {
  const PlaneGraph& g = s.target;
  if (!g.has_vertex(site.center) || g.degree(site.center) != 3)
    throw RealizationError("insertion center is not a degree-3 vertex");
  InsertIds ids = site.ids;
  ids.center = site.center;
  PlaneGraph expected;
  try {
    expected = add_edge_in_face(g, site.variant, site.e13, site.e32, ids);
  } catch (const GraphError& e) {
    throw RealizationError(std::string("invalid insertion site: ") + e.what());
  }

  const auto s13 = edge_spheres(s, site.e13);
  const auto s32 = edge_spheres(s, site.e32);
  int source = -1;
  for (int a : s13)
    for (int b : s32)
      if (a == b) source = a;
  if (source < 0) throw RealizationError("insertion edges share no face");

  const auto& cx = s.complex;
  auto vertex_point = [&](VertexId v) {
    return cx.vertices.at(static_cast<std::size_t>(s.vertex_of.at(v))).point;
  };
  auto arc_point = [&](EdgeId e, double f) {
    return cx.edges.at(static_cast<std::size_t>(s.edge_of.at(e))).arc.point(f);
  };
  const Point3 u = vertex_point(site.center);
  const Point3 z = s.polyhedron.centers.at(source);
  const VertexId u1 = g.edge(site.e13).other(site.center);
  const VertexId u2 = g.edge(site.e32).other(site.center);

  std::vector<double> fractions{0.5};
  if (site.variant != InsertVariant::I) fractions = {0.5, 0.25, 0.75};
  const int id = s.polyhedron.next_id();

  for (double f : fractions) {
    Point3 a;
    Point3 b;
    switch (site.variant) {
      case InsertVariant::I:
        a = vertex_point(u1);
        b = vertex_point(u2);
        break;
      case InsertVariant::II:
        a = arc_point(site.e13, f);
        b = vertex_point(u2);
        break;
      case InsertVariant::III:
        a = arc_point(site.e13, f);
        b = arc_point(site.e32, f);
        break;
    }
    if ((b - a).norm() <= opts.tol.eps_feature) continue;
    double theta = opts.theta0;
    for (int k = 0; k <= opts.max_bisection && theta >= opts.angle_floor; ++k, theta /= 2) {
      for (double sign : {1.0, -1.0}) {
        const Rotation3 r{a, (b - a).normalized(), sign * theta};
        const Point3 w = rotate(z, r);
        if ((u - w).norm() <= 1.0 + opts.tol.eps_feature) continue;
        BallPolyhedron p = s.polyhedron;
        p.tol = opts.tol;
        p.centers[id] = w;
        auto next = try_centers(s, p, expected);
        if (!next) continue;
        GeometricMove mv;
        mv.kind = MoveKind::AddRotatedBall;
        mv.ball = id;
        mv.center = w;
        mv.source = source;
        mv.rotation = r;
        mv.variant = site.variant;
        next->history.push_back(mv);
        return *next;
      }
    }
  }
  throw RealizationError("no rotation angle above the floor realizes the insertion");
}

RealizationState dualize(const RealizationState& s, MoveKind kind) {
  DualPolyhedron d;
  try {
    d = dual_polyhedron(s.polyhedron, s.complex);
  } catch (const GeometryError& e) {
    throw RealizationError(std::string("dualization failed: ") + e.what());
  }
  RealizationState out;
  out.polyhedron = d.polyhedron;
  out.complex = d.complex;
  out.history = s.history;
  const PlaneGraph dg = dual(s.target);
  const auto fs = faces(s.target);
  std::map<VertexId, int> vertex_hint;
  for (std::size_t i = 0; i < fs.size(); ++i)
    vertex_hint[static_cast<VertexId>(i)] = d.correspondence.face_to_vertex.at(face_sphere(s, fs[i]));
  std::map<EdgeId, int> edge_hint;
  for (const auto& [e, c] : s.edge_of) edge_hint[e] = d.correspondence.edge_to_edge.at(c);
  bind_target(out, dg, vertex_hint, edge_hint);
  GeometricMove mv;
  mv.kind = kind;
  out.history.push_back(mv);
  return out;
}

namespace {

// Edge at `center` leading towards corner c of the original Y: the spoke, or
// the merged edge that replaced it.
EdgeId edge_towards(const PlaneGraph& w, VertexId center, EdgeId spoke, EdgeId outer) {
  for (EdgeId e : {spoke, outer})
    if (w.has_edge(e) && (w.edge(e).u == center || w.edge(e).v == center)) return e;
  throw RealizationError("lost track of a spoke");
}

}  // namespace

RealizationState invert_step(const RealizationState& s, const ReductionStep& step,
                             const RealizerOptions& opts) {
  if (step.site.direction != Direction::YToDelta)
    throw RealizationError("invert_step expects a Y-to-Delta step");
  const PlaneGraph pre = ballsteinitz::invert_step(s.target, step);
  const auto& op = std::get<YToDeltaOp>(step.ops.front());
  const VertexId v = op.center;

  const auto tri = find_triangle_face(s.target, op.corners);
  if (!tri) throw RealizationError("triangle of the step is not a face of the post-graph");
  std::array<VertexId, 3> corners{};
  std::array<EdgeId, 3> spokes{};
  std::map<VertexId, EdgeId> spoke_of;
  for (int i = 0; i < 3; ++i) spoke_of[op.corners[i]] = op.spokes[i];
  for (int i = 0; i < 3; ++i) {
    corners[i] = tri->darts[i].tail;
    spokes[i] = spoke_of.at(corners[i]);
  }
  RealizationState cur = remove_triangle_ball(s, corners, NewIds{v, spokes}, opts);

  // The non-internal, non-spoke edge of each corner in the pre-graph; only
  // used for corners that the series reduction removed.
  const std::set<VertexId> corner_set(op.corners.begin(), op.corners.end());
  std::map<VertexId, EdgeId> outer_of;
  std::vector<EdgeId> internal;
  for (VertexId c : op.corners)
    for (EdgeId e : pre.rotation(c)) {
      const VertexId o = pre.edge(e).other(c);
      if (o == v) continue;
      if (corner_set.count(o)) {
        if (std::find(internal.begin(), internal.end(), e) == internal.end()) internal.push_back(e);
      } else if (!outer_of.count(c)) {
        outer_of[c] = e;
      }
    }
  std::sort(internal.begin(), internal.end());

  for (EdgeId ie : internal) {
    const PlaneGraph& w = cur.target;
    VertexId a = pre.edge(ie).u;
    VertexId b = pre.edge(ie).v;
    if (w.has_vertex(a) && !w.has_vertex(b)) std::swap(a, b);  // lost corner first
    auto towards = [&](VertexId c) {
      return edge_towards(w, v, spoke_of.at(c), outer_of.count(c) ? outer_of.at(c) : -1);
    };
    InsertionSite site;
    site.center = v;
    site.e13 = towards(a);
    site.e32 = towards(b);
    site.ids.new_edge = ie;
    const bool has_a = w.has_vertex(a);
    const bool has_b = w.has_vertex(b);
    site.variant = has_a && has_b ? InsertVariant::I : has_b ? InsertVariant::II : InsertVariant::III;
    if (!has_a) {
      site.ids.first_vertex = a;
      site.ids.first_near_edge = spoke_of.at(a);
      site.ids.first_far_edge = outer_of.at(a);
    }
    if (!has_b) {
      site.ids.second_vertex = b;
      site.ids.second_near_edge = spoke_of.at(b);
      site.ids.second_far_edge = outer_of.at(b);
    }
    cur = add_rotated_ball(cur, site, opts);
  }
  if (!(cur.target == pre)) throw RealizationError("restored graph differs from the pre-graph");
  return cur;
}

RealizationState invert_delta_step_via_dual(const RealizationState& s, const ReductionStep& step,
                                            const RealizerOptions& opts) {
  if (step.site.direction != Direction::DeltaToY)
    throw RealizationError("dual inversion expects a Delta-to-Y step");
  const PlaneGraph pre = ballsteinitz::invert_step(s.target, step);
  const auto& op = std::get<DeltaToYOp>(step.ops.front());

  // The Delta-to-Y step seen in the dual is a Y-to-Delta step at the dual
  // vertex of the triangle.
  const auto pre_faces = faces(pre);
  const auto tri = find_triangle_face(pre, op.corners);
  if (!tri) throw RealizationError("triangle of the step is missing from the pre-graph");
  const auto left = left_face_index(pre, pre_faces);
  const VertexId t = static_cast<VertexId>(left.at(tri->darts.front()));
  const PlaneGraph dual_pre = dual(pre);
  auto [dual_post, dual_step] = simple_reduction(dual_pre, Site{Direction::YToDelta, t, {}});

  RealizationState d = dualize(s, MoveKind::DualizeIn);
  // Rebind to dual_post; edge ids shared with the dual of the post-graph
  // serve as hints.
  std::map<EdgeId, int> edge_hint;
  for (EdgeId e : dual_post.edge_ids())
    if (d.edge_of.count(e)) edge_hint[e] = d.edge_of.at(e);
  bind_target(d, dual_post, {}, edge_hint);

  RealizationState restored = invert_step(d, dual_step, opts);

  RealizationState back = dualize(restored, MoveKind::DualizeOut);
  std::map<EdgeId, int> back_hint;
  for (EdgeId e : pre.edge_ids())
    if (back.edge_of.count(e)) back_hint[e] = back.edge_of.at(e);
  bind_target(back, pre, {}, back_hint);
  return back;
}

Realization realize(const PlaneGraph& g, const RealizerOptions& opts) {
  require_polyhedral(g);
  opts.tol.validate();
  Realization out;
  out.trace = reduce_to_k4(g, opts.limits);
  RealizationState s = seed_k4(opts);
  bind_target(s, out.trace.graphs.back());
  for (std::size_t i = out.trace.steps.size(); i-- > 0;) {
    const ReductionStep& step = out.trace.steps[i];
    try {
      s = step.site.direction == Direction::YToDelta ? invert_step(s, step, opts)
                                                     : invert_delta_step_via_dual(s, step, opts);
    } catch (RealizationError& e) {
      RealizationError err(e.what(), i);
      err.state = s;
      throw err;
    }
    if (!(s.target == out.trace.graphs[i]))
      throw RealizationError("realized graph differs from the trace", i);
  }
  out.polyhedron = s.polyhedron;
  out.complex = s.complex;
  out.moves = s.history;
  out.vertex_of = s.vertex_of;
  out.edge_of = s.edge_of;
  return out;
}

BallPolyhedron replay_moves(const std::vector<GeometricMove>& moves, const Tolerance& tol) {
  RealizerOptions opts;
  opts.tol = tol;
  RealizationState seed = seed_k4(opts);
  BallPolyhedron p = seed.polyhedron;
  for (const GeometricMove& m : moves) {
    switch (m.kind) {
      case MoveKind::RemoveBall:
        if (!p.centers.erase(m.ball)) throw RealizationError("replay removes a missing ball");
        break;
      case MoveKind::AddRotatedBall: {
        if (p.centers.count(m.ball)) throw RealizationError("replay adds an existing ball");
        p.centers[m.ball] = rotate(p.centers.at(m.source), m.rotation);
        break;
      }
      case MoveKind::DualizeIn:
      case MoveKind::DualizeOut:
        p = dual_polyhedron(p, compute_boundary(p)).polyhedron;
        break;
    }
  }
  return p;
}

}  // namespace ballsteinitz
