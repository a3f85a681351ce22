#include "ballsteinitz/ball_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace ballsteinitz {

DegeneracyError::DegeneracyError(const std::string& what, std::vector<int> centers)
    : GeometryError([&] {
        std::ostringstream os;
        os << what << " (centers";
        for (int c : centers) os << ' ' << c;
        os << ')';
        return os.str();
      }()),
      centers_(std::move(centers)) {}

std::vector<Point3> BallPolyhedron::points() const {
  std::vector<Point3> out;
  for (const auto& [id, c] : centers) out.push_back(c);
  return out;
}

bool BallPolyhedron::contains(const Point3& p, double slack) const {
  for (const auto& [id, c] : centers)
    if ((p - c).norm() > 1.0 + slack) return false;
  return true;
}

void validate_polyhedron(const BallPolyhedron& p) {
  p.tol.validate();
  if (p.centers.empty()) throw GeometryError("ball polyhedron without centers");
  for (auto a = p.centers.begin(); a != p.centers.end(); ++a)
    for (auto b = std::next(a); b != p.centers.end(); ++b)
      if ((a->second - b->second).norm() <= p.tol.eps_geom)
        throw GeometryError("centers " + std::to_string(a->first) + " and " +
                            std::to_string(b->first) + " coincide");
  const double r = minimum_enclosing_ball(p.points()).radius;
  if (r >= 1.0 - p.tol.eps_feature)
    throw GeometryError("centers do not fit in a ball of radius below one (radius " +
                        std::to_string(r) + ")");
}

namespace {

struct RawArc {
  int i;
  int j;
  Arc3 arc;
};

// Clipped arcs of every sphere pair; zero-length pieces are dropped.
std::vector<RawArc> pair_arcs(const BallPolyhedron& p) {
  const Tolerance& tol = p.tol;
  std::vector<RawArc> out;
  for (auto a = p.centers.begin(); a != p.centers.end(); ++a) {
    for (auto b = std::next(a); b != p.centers.end(); ++b) {
      const double d = (a->second - b->second).norm();
      if (std::abs(d - 2.0) < tol.eps_feature)
        throw DegeneracyError("tangent spheres", {a->first, b->first});
      const auto s = sphere_sphere_circle(a->second, b->second, tol);
      if (s.kind != SphereIntersection::Kind::Circle) continue;
      IntervalSet set = full_circle();
      for (const auto& [k, ck] : p.centers) {
        if (k == a->first || k == b->first) continue;
        set = intersect(set, circle_ball_clip(s.circle, ck));
        if (set.empty()) break;
      }
      for (const AngleInterval& iv : set) {
        Arc3 arc{s.circle, iv.start, iv.span, iv.full()};
        if (!arc.full) {
          const double length = arc.length();
          const double gap = s.circle.radius * (kTwoPi - iv.span);
          if (length <= tol.eps_geom) continue;
          if (length < tol.eps_feature)
            throw DegeneracyError("arc shorter than the feature size", {a->first, b->first});
          if (gap < tol.eps_feature)
            throw DegeneracyError("arc nearly closes on itself", {a->first, b->first});
        }
        out.push_back({a->first, b->first, arc});
      }
    }
  }
  return out;
}

double residual(const Point3& v, const Point3& c) { return std::abs((v - c).norm() - 1.0); }

// Re-solves a vertex from its best-conditioned triple of incident spheres.
Point3 resolve_vertex(const Point3& guess, const std::vector<int>& spheres,
                      const std::map<int, Point3>& centers, const Tolerance& tol) {
  Point3 best = guess;
  double best_err = 0.0;
  for (int s : spheres) best_err = std::max(best_err, residual(guess, centers.at(s)));
  for (std::size_t a = 0; a < spheres.size(); ++a)
    for (std::size_t b = a + 1; b < spheres.size(); ++b)
      for (std::size_t c = b + 1; c < spheres.size(); ++c) {
        TriplePoints t;
        try {
          t = triple_sphere_points(centers.at(spheres[a]), centers.at(spheres[b]),
                                   centers.at(spheres[c]), tol);
        } catch (const GeometryError&) {
          continue;
        }
        if (t.kind == TriplePoints::Kind::None) continue;
        const Point3 cand = (t.q - guess).norm() <= (t.qbar - guess).norm() ? t.q : t.qbar;
        if ((cand - guess).norm() > tol.eps_feature) continue;
        double err = 0.0;
        for (int s : spheres) err = std::max(err, residual(cand, centers.at(s)));
        if (err < best_err) {
          best_err = err;
          best = cand;
        }
      }
  return best;
}

Vec3 tangent_plane_direction(const Vec3& v, const Vec3& normal) {
  return (v - normal.dot(v) * normal).normalized();
}

// Counterclockwise angle about `normal` from direction a to direction b, in [0, 2pi).
double ccw_angle(const Vec3& a, const Vec3& b, const Vec3& normal) {
  return canonical_angle(std::atan2(normal.dot(a.cross(b)), a.dot(b)));
}

struct FaceDart {
  int edge;
  bool forward;
};

}  // namespace

int BoundaryComplex::face_index(int sphere) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].sphere == sphere) return static_cast<int>(i);
  return -1;
}

int BoundaryComplex::left_sphere(int edge, int tail) const {
  const ComplexEdge& e = edges.at(static_cast<std::size_t>(edge));
  if (tail == e.start) return e.spheres[0];
  if (tail == e.end) return e.spheres[1];
  throw GeometryError("vertex is not an endpoint of the edge");
}

Vec3 BoundaryComplex::departure(int edge, int v) const {
  const ComplexEdge& e = edges.at(static_cast<std::size_t>(edge));
  if (v == e.start) return e.arc.circle.tangent(e.arc.start);
  if (v == e.end) return -e.arc.circle.tangent(e.arc.start + e.arc.span);
  throw GeometryError("vertex is not an endpoint of the edge");
}

BoundaryComplex compute_boundary(const BallPolyhedron& p) {
  validate_polyhedron(p);
  const Tolerance& tol = p.tol;
  BoundaryComplex c;
  c.centers = p.centers;
  c.tol = tol;
  if (p.centers.size() == 1) {
    c.faces.push_back({p.centers.begin()->first, {}});
    return c;
  }
  const auto arcs = pair_arcs(p);

  // Endpoints grouped by proximity.
  struct End {
    Point3 point;
    std::size_t arc;
    bool start;
  };
  std::vector<End> ends;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].arc.full) continue;
    ends.push_back({arcs[a].arc.point(0.0), a, true});
    ends.push_back({arcs[a].arc.point(1.0), a, false});
  }
  std::vector<std::size_t> parent(ends.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < ends.size(); ++a)
    for (std::size_t b = a + 1; b < ends.size(); ++b)
      if ((ends[a].point - ends[b].point).norm() <= tol.eps_geom) parent[find(b)] = find(a);

  std::map<std::size_t, int> cluster_vertex;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t a = 0; a < ends.size(); ++a) {
    const std::size_t root = find(a);
    auto [it, fresh] = cluster_vertex.emplace(root, static_cast<int>(members.size()));
    if (fresh) members.emplace_back();
    members[static_cast<std::size_t>(it->second)].push_back(a);
  }
  for (const auto& group : members) {
    Point3 mean = Point3::Zero();
    for (std::size_t m : group) mean += ends[m].point;
    mean /= static_cast<double>(group.size());
    ComplexVertex v;
    for (const auto& [id, ctr] : p.centers) {
      const double r = residual(mean, ctr);
      if (r <= tol.eps_geom) {
        v.spheres.push_back(id);
      } else if (r < tol.eps_feature) {
        std::vector<int> involved{id};
        for (std::size_t m : group) {
          involved.push_back(arcs[ends[m].arc].i);
          involved.push_back(arcs[ends[m].arc].j);
        }
        std::sort(involved.begin(), involved.end());
        involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
        throw DegeneracyError("sphere passes within the feature size of a vertex", involved);
      }
    }
    if (v.spheres.size() < 3)
      throw DegeneracyError("vertex on fewer than three spheres", v.spheres);
    v.point = resolve_vertex(mean, v.spheres, p.centers, tol);
    c.vertices.push_back(v);
  }
  for (std::size_t a = 0; a < c.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < c.vertices.size(); ++b)
      if ((c.vertices[a].point - c.vertices[b].point).norm() < tol.eps_feature) {
        std::vector<int> involved = c.vertices[a].spheres;
        involved.insert(involved.end(), c.vertices[b].spheres.begin(), c.vertices[b].spheres.end());
        std::sort(involved.begin(), involved.end());
        involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
        throw DegeneracyError("two vertices closer than the feature size", involved);
      }

  std::vector<int> end_vertex(ends.size());
  for (std::size_t a = 0; a < ends.size(); ++a) end_vertex[a] = cluster_vertex.at(find(a));
  std::vector<std::array<int, 2>> arc_ends(arcs.size(), {-1, -1});
  for (std::size_t a = 0; a < ends.size(); ++a)
    arc_ends[ends[a].arc][ends[a].start ? 0 : 1] = end_vertex[a];

  for (std::size_t a = 0; a < arcs.size(); ++a) {
    ComplexEdge e;
    e.arc = arcs[a].arc;
    e.spheres = {arcs[a].i, arcs[a].j};
    e.start = arc_ends[a][0];
    e.end = arc_ends[a][1];
    if (!e.full() && e.start == e.end)
      throw DegeneracyError("arc with coincident endpoints", {e.spheres[0], e.spheres[1]});
    c.edges.push_back(e);
  }

  // Faces: stitch the directed arcs of each sphere.
  for (const auto& [sphere, ctr] : p.centers) {
    std::vector<FaceDart> darts;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      const auto& ce = c.edges[e];
      if (ce.spheres[0] == sphere) darts.push_back({static_cast<int>(e), true});
      if (ce.spheres[1] == sphere) darts.push_back({static_cast<int>(e), false});
    }
    if (darts.empty()) continue;
    ComplexFace face;
    face.sphere = sphere;
    std::map<int, std::vector<std::size_t>> leaving;
    for (std::size_t d = 0; d < darts.size(); ++d) {
      const auto& ce = c.edges[static_cast<std::size_t>(darts[d].edge)];
      if (ce.full()) continue;
      leaving[darts[d].forward ? ce.start : ce.end].push_back(d);
    }
    std::vector<bool> used(darts.size(), false);
    for (std::size_t first = 0; first < darts.size(); ++first) {
      if (used[first]) continue;
      FaceCycle cycle;
      std::size_t d = first;
      for (;;) {
        used[d] = true;
        cycle.edges.push_back(darts[d].edge);
        cycle.forward.push_back(darts[d].forward);
        const auto& ce = c.edges[static_cast<std::size_t>(darts[d].edge)];
        if (ce.full()) break;
        const int head = darts[d].forward ? ce.end : ce.start;
        const auto& options = leaving[head];
        std::size_t next = options.front();
        if (options.size() > 1) {
          const Vec3 normal = (c.vertices[static_cast<std::size_t>(head)].point - ctr).normalized();
          const Vec3 back = tangent_plane_direction(c.departure(darts[d].edge, head), normal);
          double best = 10.0;
          for (std::size_t o : options) {
            const Vec3 out = tangent_plane_direction(c.departure(darts[o].edge, head), normal);
            const double angle = ccw_angle(out, back, normal);
            if (angle < best) {
              best = angle;
              next = o;
            }
          }
        }
        if (next == first) break;
        if (used[next]) throw DegeneracyError("face boundary does not close", {sphere});
        d = next;
      }
      face.cycles.push_back(std::move(cycle));
    }
    c.faces.push_back(std::move(face));
  }
  return c;
}

PlaneGraph edge_graph(const BoundaryComplex& c) {
  for (const auto& e : c.edges)
    if (e.full()) throw NonStandardError("complex has a full-circle edge");
  for (const auto& f : c.faces)
    if (f.cycles.size() != 1)
      throw NonStandardError("face on sphere " + std::to_string(f.sphere) +
                             " is not bounded by a single cycle");
  PlaneGraph g;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) g.add_vertex(static_cast<VertexId>(v));
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    g.add_edge(c.edges[e].start, c.edges[e].end, static_cast<EdgeId>(e));
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    const auto& cv = c.vertices[v];
    Vec3 normal = Vec3::Zero();
    for (int s : cv.spheres) normal += (cv.point - c.centers.at(s)).normalized();
    normal.normalize();
    const auto& rot = g.rotation(static_cast<VertexId>(v));
    if (rot.empty()) continue;
    const Vec3 ref = tangent_plane_direction(c.departure(rot.front(), static_cast<int>(v)), normal);
    std::vector<std::pair<double, EdgeId>> keyed;
    for (EdgeId e : rot) {
      const Vec3 dir = tangent_plane_direction(c.departure(e, static_cast<int>(v)), normal);
      keyed.emplace_back(ccw_angle(ref, dir, normal), e);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<EdgeId> order;
    for (const auto& k : keyed) order.push_back(k.second);
    g.set_rotation(static_cast<VertexId>(v), order);
  }
  return g;
}

std::vector<int> graph_face_spheres(const BoundaryComplex& c, const PlaneGraph& g) {
  std::vector<int> out;
  for (const Face& f : faces(g)) {
    const int sphere = c.left_sphere(f.darts.front().edge, f.darts.front().tail);
    for (const Dart& d : f.darts)
      if (c.left_sphere(d.edge, d.tail) != sphere)
        throw GeometryError("graph face does not match a single sphere");
    out.push_back(sphere);
  }
  return out;
}

StandardnessCertificate is_standard_polyhedron(const BoundaryComplex& c) {
  StandardnessCertificate cert;
  auto fail = [&](std::string why) { cert.violations.push_back(std::move(why)); };
  for (const auto& [id, ctr] : c.centers)
    if (c.face_index(id) < 0) fail("sphere " + std::to_string(id) + " has no face");
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    if (c.edges[e].full()) fail("edge " + std::to_string(e) + " is a full circle");
  std::vector<std::set<int>> face_vertices(c.faces.size()), face_edges(c.faces.size());
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    const auto& face = c.faces[f];
    const std::string name = "face " + std::to_string(face.sphere);
    if (face.cycles.empty()) fail(name + " has no boundary");
    if (face.cycles.size() > 1) fail(name + " has " + std::to_string(face.cycles.size()) + " boundary cycles");
    std::size_t visits = 0;
    for (const auto& cycle : face.cycles)
      for (std::size_t k = 0; k < cycle.edges.size(); ++k) {
        const auto& e = c.edges[static_cast<std::size_t>(cycle.edges[k])];
        face_edges[f].insert(cycle.edges[k]);
        if (!e.full()) {
          face_vertices[f].insert(cycle.forward[k] ? e.start : e.end);
          ++visits;
        }
      }
    if (visits != face_vertices[f].size()) fail(name + " meets a vertex twice");
  }
  for (std::size_t a = 0; a < c.faces.size(); ++a)
    for (std::size_t b = a + 1; b < c.faces.size(); ++b) {
      std::vector<int> common_v, common_e;
      std::set_intersection(face_vertices[a].begin(), face_vertices[a].end(),
                            face_vertices[b].begin(), face_vertices[b].end(),
                            std::back_inserter(common_v));
      std::set_intersection(face_edges[a].begin(), face_edges[a].end(), face_edges[b].begin(),
                            face_edges[b].end(), std::back_inserter(common_e));
      const std::string pair =
          "faces " + std::to_string(c.faces[a].sphere) + " and " + std::to_string(c.faces[b].sphere);
      if (common_e.size() > 1) {
        fail(pair + " share " + std::to_string(common_e.size()) + " edges");
      } else if (common_e.size() == 1) {
        const auto& e = c.edges[static_cast<std::size_t>(common_e.front())];
        if (!e.full() && common_v != std::vector<int>{std::min(e.start, e.end), std::max(e.start, e.end)})
          fail(pair + " meet in more than their common edge");
      } else if (common_v.size() > 1) {
        fail(pair + " share " + std::to_string(common_v.size()) + " vertices but no edge");
      }
    }
  std::map<std::pair<int, int>, std::vector<int>> by_ends;
  for (std::size_t e = 0; e < c.edges.size(); ++e)
    if (!c.edges[e].full())
      by_ends[std::minmax(c.edges[e].start, c.edges[e].end)].push_back(static_cast<int>(e));
  for (const auto& [ends, list] : by_ends)
    if (list.size() > 1)
      fail("edges " + std::to_string(list[0]) + " and " + std::to_string(list[1]) +
           " share both endpoints");
  if (cert.violations.empty()) {
    const long euler = static_cast<long>(c.vertices.size()) - static_cast<long>(c.edges.size()) +
                       static_cast<long>(c.faces.size());
    if (euler != 2) fail("Euler characteristic is " + std::to_string(euler));
  }
  cert.standard = cert.violations.empty();
  return cert;
}

BallPolyhedron reduce_centers(const std::vector<Point3>& centers, const Tolerance& tol) {
  if (centers.empty()) throw GeometryError("no centers to reduce");
  BallPolyhedron p;
  p.tol = tol;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    bool duplicate = false;
    for (const auto& [id, c] : p.centers) duplicate = duplicate || (c - centers[i]).norm() <= tol.eps_geom;
    if (!duplicate) p.centers[static_cast<int>(i)] = centers[i];
  }
  return reduce_centers(p);
}

BallPolyhedron reduce_centers(const BallPolyhedron& input) {
  BallPolyhedron p = input;
  validate_polyhedron(p);
  for (;;) {
    if (p.centers.size() == 1) return p;
    const auto arcs = pair_arcs(p);
    std::set<int> with_arcs;
    for (const auto& a : arcs) {
      with_arcs.insert(a.i);
      with_arcs.insert(a.j);
    }
    int drop = -1;
    for (const auto& [id, c] : p.centers) {
      if (with_arcs.count(id)) continue;
      // A sphere without arcs lies either inside all other balls or outside the body.
      bool whole = true;
      for (const Vec3& dir : std::array<Vec3, 4>{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ(),
                                                 Vec3(-1, -1, -1).normalized()})
        whole = whole && p.contains(c + dir, -p.tol.eps_geom);
      if (whole) {
        BallPolyhedron single;
        single.tol = p.tol;
        single.centers[id] = c;
        return single;
      }
      drop = id;
      break;
    }
    if (drop < 0) return p;
    p.centers.erase(drop);
  }
}

DualPolyhedron dual_polyhedron(const BallPolyhedron& p, const BoundaryComplex& c) {
  const auto cert = is_standard_polyhedron(c);
  if (!cert.standard) throw NonStandardError("dual needs a standard complex: " + cert.violations.front());
  DualPolyhedron out;
  out.polyhedron.tol = p.tol;
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    out.polyhedron.centers[static_cast<int>(v)] = c.vertices[v].point;
  out.complex = compute_boundary(out.polyhedron);
  const BoundaryComplex& d = out.complex;
  auto& corr = out.correspondence;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (d.face_index(static_cast<int>(v)) < 0)
      throw GeometryError("dual sphere " + std::to_string(v) + " has no face");
    corr.vertex_to_face[static_cast<int>(v)] = static_cast<int>(v);
  }
  for (const auto& face : c.faces) {
    const Point3& ctr = p.centers.at(face.sphere);
    int best = -1;
    double dist = p.tol.eps_feature;
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
      const double r = (d.vertices[v].point - ctr).norm();
      if (r < dist) {
        dist = r;
        best = static_cast<int>(v);
      }
    }
    if (best < 0) throw GeometryError("no dual vertex at center " + std::to_string(face.sphere));
    corr.face_to_vertex[face.sphere] = best;
  }
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> dual_edges;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& de = d.edges[e];
    dual_edges[{std::minmax(de.spheres[0], de.spheres[1]), std::minmax(de.start, de.end)}] =
        static_cast<int>(e);
  }
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto& ce = c.edges[e];
    const auto key = std::make_pair(
        std::minmax(ce.start, ce.end),
        std::minmax(corr.face_to_vertex.at(ce.spheres[0]), corr.face_to_vertex.at(ce.spheres[1])));
    auto it = dual_edges.find(key);
    if (it == dual_edges.end()) throw GeometryError("edge " + std::to_string(e) + " has no dual edge");
    corr.edge_to_edge[static_cast<int>(e)] = it->second;
  }
  if (corr.edge_to_edge.size() != d.edges.size() || corr.face_to_vertex.size() != d.vertices.size())
    throw GeometryError("duality correspondence is not bijective");
  // Containment is reversed: a vertex on a face maps to a face through a vertex.
  for (const auto& face : c.faces)
    for (const auto& cycle : face.cycles)
      for (int e : cycle.edges)
        for (int v : {c.edges[static_cast<std::size_t>(e)].start, c.edges[static_cast<std::size_t>(e)].end}) {
          const auto& spheres = d.vertices[static_cast<std::size_t>(corr.face_to_vertex.at(face.sphere))].spheres;
          if (!std::binary_search(spheres.begin(), spheres.end(), corr.vertex_to_face.at(v)))
            throw GeometryError("duality correspondence does not reverse containment");
        }
  return out;
}

namespace {

Vec3 slerp_dir(const Vec3& a, const Vec3& b, double f) {
  const double cosang = std::clamp(a.dot(b), -1.0, 1.0);
  const double ang = std::acos(cosang);
  if (ang < 1e-12) return a;
  return ((std::sin((1 - f) * ang) * a + std::sin(f * ang) * b) / std::sin(ang)).normalized();
}

}  // namespace

std::string export_obj(const BoundaryComplex& c, double step_degrees) {
  if (!(step_degrees > 0.0)) throw GeometryError("tessellation step must be positive");
  const double step = step_degrees * kTwoPi / 360.0;
  std::ostringstream os;
  os << std::setprecision(9) << std::fixed;
  os << "# ball polyhedron: " << c.vertices.size() << " vertices, " << c.edges.size()
     << " edges, " << c.faces.size() << " faces\n";
  std::size_t next_index = 1;
  auto emit = [&](const Point3& p) {
    os << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    return next_index++;
  };
  for (const auto& face : c.faces) {
    const Point3& ctr = c.centers.at(face.sphere);
    os << "g face_" << face.sphere << '\n';
    if (face.cycles.empty()) {
      const int rings = std::max(2, static_cast<int>(std::ceil(kTwoPi / 2.0 / step)));
      const int segs = std::max(3, static_cast<int>(std::ceil(kTwoPi / step)));
      std::vector<std::vector<std::size_t>> idx(static_cast<std::size_t>(rings + 1));
      for (int r = 0; r <= rings; ++r) {
        const double th = kTwoPi / 2.0 * r / rings;
        for (int s = 0; s < segs; ++s) {
          const double ph = kTwoPi * s / segs;
          idx[static_cast<std::size_t>(r)].push_back(
              emit(ctr + Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th))));
        }
      }
      for (int r = 0; r < rings; ++r)
        for (int s = 0; s < segs; ++s) {
          const auto& a = idx[static_cast<std::size_t>(r)];
          const auto& b = idx[static_cast<std::size_t>(r + 1)];
          const std::size_t s1 = static_cast<std::size_t>((s + 1) % segs);
          const std::size_t s0 = static_cast<std::size_t>(s);
          os << "f " << a[s0] << ' ' << b[s0] << ' ' << b[s1] << ' ' << a[s1] << '\n';
        }
      continue;
    }
    for (const auto& cycle : face.cycles) {
      std::vector<Vec3> boundary;
      for (std::size_t k = 0; k < cycle.edges.size(); ++k) {
        const auto& e = c.edges[static_cast<std::size_t>(cycle.edges[k])];
        const int n = std::max(1, static_cast<int>(std::ceil(e.arc.span / step)));
        for (int i = 0; i < n; ++i) {
          const double f = static_cast<double>(i) / n;
          const Point3 p = e.arc.point(cycle.forward[k] ? f : 1.0 - f);
          boundary.push_back((p - ctr).normalized());
        }
      }
      Vec3 hub = Vec3::Zero();
      for (const Vec3& b : boundary) hub += b;
      hub.normalize();
      double reach = 0.0;
      for (const Vec3& b : boundary) reach = std::max(reach, std::acos(std::clamp(hub.dot(b), -1.0, 1.0)));
      const int rings = std::max(1, static_cast<int>(std::ceil(reach / step)));
      const std::size_t center_index = emit(ctr + hub);
      std::vector<std::vector<std::size_t>> ring(boundary.size());
      for (std::size_t b = 0; b < boundary.size(); ++b)
        for (int r = 1; r <= rings; ++r)
          ring[b].push_back(emit(ctr + slerp_dir(hub, boundary[b], static_cast<double>(r) / rings)));
      for (std::size_t b = 0; b < boundary.size(); ++b) {
        const auto& p = ring[b];
        const auto& q = ring[(b + 1) % boundary.size()];
        os << "f " << center_index << ' ' << p[0] << ' ' << q[0] << '\n';
        for (std::size_t r = 0; r + 1 < p.size(); ++r)
          os << "f " << p[r] << ' ' << p[r + 1] << ' ' << q[r + 1] << ' ' << q[r] << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace ballsteinitz
