// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ballsteinitz/ball_kernel.hpp"
#include "ballsteinitz/geometry.hpp"
#include "ballsteinitz/plane_graph.hpp"
#include "ballsteinitz/realizer.hpp"
#include "ballsteinitz/reduction.hpp"
#include "kernel_oracle.hpp"
#include "support.hpp"

using namespace ballsteinitz;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

void report(int n, const char* name, const Verdict& v, bool& all) {
  std::printf("criterion %d %-28s %s  %s\n", n, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  std::fflush(stdout);
  all = all && v.pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::array<VertexId, 3> corners(const Face& f) { return {f.darts[0].tail, f.darts[1].tail, f.darts[2].tail}; }

struct Instance {
  std::string name;
  PlaneGraph graph;
  std::optional<Realization> realization;
};

// Every complex produced along the way; the membership oracle runs on all.
struct Collected {
  std::vector<BoundaryComplex> complexes;
};

std::vector<Instance> corpus() {
  std::vector<Instance> out{{"K4", graphs::k4(), {}},
                            {"triangular prism", graphs::prism(3), {}},
                            {"cube", graphs::cube(), {}},
                            {"pentagonal prism", graphs::prism(5), {}}};
  std::mt19937 rng(20261016);
  for (int i = 0; i < 20; ++i) {
    const int steps = 3 + static_cast<int>(rng() % 4);
    out.push_back({fmt("random %d (%d steps)", i, steps), testsupport::random_by_inverse_reductions(rng, steps), {}});
  }
  return out;
}

bool realizes(const BoundaryComplex& c, const PlaneGraph& g) {
  if (!is_standard_polyhedron(c).standard) return false;
  try {
    return plane_isomorphism(g, edge_graph(c)).has_value();
  } catch (const GeometryError&) {
    return false;
  }
}

Verdict end_to_end(std::vector<Instance>& instances, Collected& all) {
  Verdict v;
  double worst = 0.0;
  int ok = 0;
  std::size_t largest = 0;
  for (auto& inst : instances) {
    largest = std::max(largest, inst.graph.vertex_count());
    const auto t0 = Clock::now();
    try {
      inst.realization = realize(inst.graph);
    } catch (const std::exception& e) {
      std::printf("  %s: %s\n", inst.name.c_str(), e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    worst = std::max(worst, secs);
    const bool good = inst.realization && realizes(inst.realization->complex, inst.graph) && secs <= 60.0;
    if (inst.realization) all.complexes.push_back(inst.realization->complex);
    if (good) ++ok;
    else std::printf("  %s: not realized (%.2f s)\n", inst.name.c_str(), secs);
  }
  v.pass = ok == static_cast<int>(instances.size());
  v.detail = fmt("%d/%zu realized, up to %zu vertices, slowest %.2f s", ok, instances.size(), largest, worst);
  return v;
}

Verdict three_balls(Collected& all) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> box(-0.8, 0.8);
  int ok = 0;
  int n = 0;
  while (n < 100) {
    const Point3 a(box(rng), box(rng), box(rng));
    const Point3 b(box(rng), box(rng), box(rng));
    const Point3 c(box(rng), box(rng), box(rng));
    bool inside = true;
    for (double d : {(a - b).norm(), (b - c).norm(), (c - a).norm()}) inside = inside && d > 0.5 && d < 1.5;
    if (!inside || circumradius(a, b, c) >= 1.0) continue;
    ++n;
    BallPolyhedron p;
    p.centers = {{0, a}, {1, b}, {2, c}};
    try {
      const BoundaryComplex cx = compute_boundary(p);
      all.complexes.push_back(cx);
      if (cx.vertices.size() == 2 && cx.edges.size() == 3 && cx.faces.size() == 3) ++ok;
    } catch (const std::exception& e) {
      std::printf("  triple %d: %s\n", n, e.what());
    }
  }
  return {ok == n, fmt("%d/%d triples give 2 vertices, 3 edges, 3 faces", ok, n)};
}

struct Removal {
  BallPolyhedron before;
  BallPolyhedron after;
  Point3 removed;
  std::array<int, 3> neighbours;
};

RealizationState state_of(const Realization& r, const PlaneGraph& g) {
  RealizationState s;
  s.polyhedron = r.polyhedron;
  s.complex = r.complex;
  bind_target(s, g);
  return s;
}

Verdict removals(const std::vector<Instance>& instances, std::vector<Removal>& out, Collected& all) {
  int cases = 0;
  int ok = 0;
  for (const auto& inst : instances) {
    if (!inst.realization) continue;
    const RealizationState s = state_of(*inst.realization, inst.graph);
    for (const Face& f : faces(s.target)) {
      if (f.size() != 3) continue;
      ++cases;
      const auto tri = corners(f);
      try {
        const RealizationState r = remove_triangle_ball(s, tri);
        const PlaneGraph expected = simple_reduction(s.target, Site{Direction::DeltaToY, -1, tri}).first;
        all.complexes.push_back(r.complex);
        if (!(r.target == expected) || !isomorphic(edge_graph(r.complex), expected)) {
          std::printf("  %s: removal differs from the reduction\n", inst.name.c_str());
          continue;
        }
        ++ok;
        Removal rm;
        rm.before = s.polyhedron;
        rm.after = r.polyhedron;
        const int lambda = face_sphere(s, f);
        rm.removed = s.polyhedron.centers.at(lambda);
        for (std::size_t i = 0; i < 3; ++i) {
          const auto sp = s.complex.edges.at(static_cast<std::size_t>(s.edge_of.at(f.darts[i].edge))).spheres;
          rm.neighbours[i] = sp[0] == lambda ? sp[1] : sp[0];
        }
        out.push_back(rm);
      } catch (const std::exception& e) {
        std::printf("  %s: removal failed: %s\n", inst.name.c_str(), e.what());
      }
    }
  }
  return {cases > 0 && ok == cases, fmt("%d/%d triangular faces", ok, cases)};
}

// Uniform points on the spheres of X' that lie on bd B[X'] and outside
// B[x_Lambda], i.e. on the part of the boundary that is new. A first pass
// draws from whole spheres; since the new part can be tiny, a second pass
// draws from the caps near the triple points of x_Lambda and its neighbours.
struct Cap {
  int sphere;
  Point3 center;
  Vec3 axis;
  double min_cos;
};

Point3 on_cap(const Cap& c, std::mt19937& rng) {
  std::uniform_real_distribution<double> z(c.min_cos, 1.0);
  std::uniform_real_distribution<double> phi(0.0, kTwoPi);
  const Vec3 u = c.axis.unitOrthogonal();
  const Vec3 w = c.axis.cross(u);
  const double h = z(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
  const double a = phi(rng);
  return c.center + h * c.axis + r * (std::cos(a) * u + std::sin(a) * w);
}

std::vector<Cap> focus_caps(const Removal& rm) {
  std::vector<Point3> pts;
  const Point3 x1 = rm.after.centers.at(rm.neighbours[0]);
  const Point3 x2 = rm.after.centers.at(rm.neighbours[1]);
  const Point3 x3 = rm.after.centers.at(rm.neighbours[2]);
  for (const auto& [a, b, c] : {std::array{x1, x2, x3}, std::array{rm.removed, x1, x2},
                                std::array{rm.removed, x2, x3}, std::array{rm.removed, x3, x1}}) {
    try {
      const TriplePoints t = triple_sphere_points(a, b, c);
      for (const Point3& p : {t.q, t.qbar})
        if (rm.after.contains(p, 1e-6)) pts.push_back(p);
    } catch (const GeometryError&) {
    }
  }
  if (pts.empty()) return {};
  Point3 m = Point3::Zero();
  for (const auto& p : pts) m += p;
  m /= static_cast<double>(pts.size());
  double rho = 1e-3;
  for (const auto& p : pts) rho = std::max(rho, 2.0 * (p - m).norm());
  std::vector<Cap> caps;
  for (const auto& [id, x] : rm.after.centers) {
    const double d = (m - x).norm();
    if (d > 1.0 + rho) continue;
    const double c0 = d < 1e-12 ? -1.0 : (1.0 + d * d - rho * rho) / (2.0 * d);
    caps.push_back({id, x, d < 1e-12 ? Vec3(0, 0, 1) : Vec3((m - x) / d), std::clamp(c0, -1.0, 1.0)});
  }
  return caps;
}

Verdict new_boundary(const std::vector<Removal>& rms) {
  constexpr std::size_t kWanted = 10000;
  constexpr std::size_t kWholeTrials = 2000000;
  constexpr std::size_t kCapTrials = 20000000;
  std::size_t bad = 0;
  std::size_t short_cases = 0;
  std::size_t total = 0;
  std::size_t from_whole = 0;
  std::mt19937 rng(11);
  for (const auto& rm : rms) {
    const double eps = rm.after.tol.eps_geom;
    std::size_t got = 0;
    auto probe = [&](int id, const Point3& p) {
      if ((p - rm.removed).norm() <= 1.0 + 1e-7) return false;
      for (const auto& [other, y] : rm.after.centers)
        if (other != id && (p - y).norm() > 1.0 + eps) return false;
      ++got;
      double gap = 1e300;
      for (int n : rm.neighbours) gap = std::min(gap, std::abs((p - rm.after.centers.at(n)).norm() - 1.0));
      if (gap > eps) ++bad;
      return true;
    };
    std::vector<std::pair<int, Point3>> xs(rm.after.centers.begin(), rm.after.centers.end());
    for (std::size_t trial = 0; got < kWanted && trial < kWholeTrials; ++trial) {
      const auto& [id, x] = xs[rng() % xs.size()];
      if (probe(id, x + testsupport::random_unit(rng))) ++from_whole;
    }
    const auto caps = focus_caps(rm);
    std::vector<double> areas;
    for (const auto& c : caps) areas.push_back(1.0 - c.min_cos);
    if (!caps.empty()) {
      std::discrete_distribution<std::size_t> pick(areas.begin(), areas.end());
      for (std::size_t trial = 0; got < kWanted && trial < kCapTrials; ++trial) {
        const Cap& c = caps[pick(rng)];
        probe(c.sphere, on_cap(c, rng));
      }
    }
    total += got;
    if (got < kWanted) ++short_cases;
  }
  return {!rms.empty() && bad == 0 && short_cases == 0,
          fmt("%zu removals, %zu samples (%zu from whole spheres), %zu off the neighbouring spheres, %zu short",
              rms.size(), total, from_whole, bad, short_cases)};
}

Verdict duality(const std::vector<Instance>& instances, Collected& all) {
  int ok = 0;
  int n = 0;
  for (const auto& inst : instances) {
    if (!inst.realization || !is_standard_polyhedron(inst.realization->complex).standard) continue;
    ++n;
    try {
      const PlaneGraph g = edge_graph(inst.realization->complex);
      const DualPolyhedron d = dual_polyhedron(inst.realization->polyhedron, inst.realization->complex);
      all.complexes.push_back(d.complex);
      const bool d_standard = is_standard_polyhedron(d.complex).standard;
      const bool d_graph = d_standard && plane_isomorphism(dual(g), edge_graph(d.complex)).has_value();
      const DualPolyhedron dd = dual_polyhedron(d.polyhedron, d.complex);
      all.complexes.push_back(dd.complex);
      const bool back = is_standard_polyhedron(dd.complex).standard &&
                        plane_isomorphism(g, edge_graph(dd.complex)).has_value();
      if (d_standard && d_graph && back) ++ok;
      else std::printf("  %s: standard %d, dual graph %d, double dual %d\n", inst.name.c_str(), d_standard, d_graph, back);
    } catch (const std::exception& e) {
      std::printf("  %s: %s\n", inst.name.c_str(), e.what());
    }
  }
  return {n > 0 && ok == n, fmt("%d/%d standard complexes", ok, n)};
}

Verdict oracle(const Collected& all) {
  constexpr std::size_t kPerSphere = 100000;
  struct Tally {
    std::size_t samples = 0, skipped = 0, wrong = 0, euler_bad = 0, standard = 0;
  };
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<Tally>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      Tally t;
      for (std::size_t i = w; i < all.complexes.size(); i += workers) {
        const BoundaryComplex& c = all.complexes[i];
        std::mt19937 rng(static_cast<unsigned>(1000 + i));
        const auto r = testsupport::membership_oracle(c, kPerSphere, rng);
        t.samples += r.samples;
        t.skipped += r.skipped;
        t.wrong += r.misclassified;
        if (is_standard_polyhedron(c).standard) {
          ++t.standard;
          const long euler = static_cast<long>(c.vertices.size()) - static_cast<long>(c.edges.size()) +
                             static_cast<long>(c.faces.size());
          if (euler != 2) ++t.euler_bad;
        }
      }
      return t;
    }));
  Tally sum;
  for (auto& j : jobs) {
    const Tally t = j.get();
    sum.samples += t.samples;
    sum.skipped += t.skipped;
    sum.wrong += t.wrong;
    sum.euler_bad += t.euler_bad;
    sum.standard += t.standard;
  }
  return {sum.wrong == 0 && sum.euler_bad == 0,
          fmt("%zu complexes, %zu samples (%zu in band), %zu misclassified; Euler fails on %zu of %zu standard",
              all.complexes.size(), sum.samples, sum.skipped, sum.wrong, sum.euler_bad, sum.standard)};
}

Verdict reduction_engine(const std::vector<Instance>& instances) {
  int ok = 0;
  for (const auto& inst : instances) {
    try {
      const ReductionTrace t = reduce_to_k4(inst.graph);
      bool good = is_k4(t.graphs.back());
      for (const auto& g : t.graphs) good = good && is_plane(g) && is_three_connected(g);
      replay_trace(t);
      if (good) ++ok;
      else std::printf("  %s: bad trace\n", inst.name.c_str());
    } catch (const std::exception& e) {
      std::printf("  %s: %s\n", inst.name.c_str(), e.what());
    }
  }
  std::mt19937 rng(26);
  int checks = 0;
  int agree = 0;
  while (checks < 20) {
    const PlaneGraph g = testsupport::random_polyhedral(rng, 5, 14);
    const auto fs = faces(g);
    std::vector<std::size_t> tris;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].size() == 3) tris.push_back(i);
    if (tris.empty()) continue;
    ++checks;
    const std::size_t t = tris[rng() % tris.size()];
    const PlaneGraph post = simple_reduction(g, Site{Direction::DeltaToY, -1, corners(fs[t])}).first;
    const PlaneGraph via_dual =
        simple_reduction(dual(g), Site{Direction::YToDelta, static_cast<VertexId>(t), {}}).first;
    if (plane_isomorphism(dual(post), via_dual)) ++agree;
  }
  return {ok == static_cast<int>(instances.size()) && agree == checks,
          fmt("%d/%zu corpus traces; duality cross-check %d/%d", ok, instances.size(), agree, checks)};
}

Verdict graph_standardness() {
  std::mt19937 rng(31);
  // K4 is excluded: its Delta-to-Y reduction is the theta graph, whose three
  // parallel edges share both ends. Reductions never start from K4.
  const bool k4_exception = !is_standard_graph(
      simple_reduction(graphs::k4(), Site{Direction::DeltaToY, -1, corners(faces(graphs::k4()).front())}).first);
  int delta_graphs = 0, delta_ops = 0, delta_bad = 0;
  while (delta_graphs < 100) {
    const PlaneGraph g = testsupport::random_polyhedral(rng, 5, 16);
    std::vector<Face> tris;
    for (const Face& f : faces(g))
      if (f.size() == 3) tris.push_back(f);
    if (tris.empty()) continue;
    ++delta_graphs;
    for (const Face& f : tris) {
      ++delta_ops;
      if (!is_standard_graph(simple_reduction(g, Site{Direction::DeltaToY, -1, corners(f)}).first)) ++delta_bad;
    }
  }
  std::array<int, 3> ops{}, bad{};
  for (int n = 0; n < 100; ++n) {
    const PlaneGraph g = testsupport::random_polyhedral(rng, 4, 16);
    for (const Face& f : faces(g))
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Dart in = f.darts[i];
        const Dart out = f.darts[(i + 1) % f.size()];
        const VertexId u1 = in.tail;
        const VertexId u2 = f.darts[(i + 2) % f.size()].tail;
        if (u1 == u2 || !g.edges_between(u1, u2).empty()) continue;
        for (int k = 0; k < 3; ++k) {
          ++ops[k];
          if (!is_standard_graph(add_edge_in_face(g, static_cast<InsertVariant>(k), in.edge, out.edge))) ++bad[k];
        }
      }
  }
  return {delta_bad == 0 && bad == std::array<int, 3>{} && ops[0] > 0,
          fmt("Delta-Y %d/%d on %d graphs (K4 gives the theta graph: %s); insertions I %d/%d, II %d/%d, III %d/%d on 100 graphs",
              delta_ops - delta_bad, delta_ops, delta_graphs, k4_exception ? "excluded" : "standard", ops[0] - bad[0], ops[0], ops[1] - bad[1], ops[1],
              ops[2] - bad[2], ops[2])};
}

}  // namespace

int main() {
  bool all = true;
  Collected collected;
  std::vector<Instance> instances = corpus();
  report(1, "end-to-end realization", end_to_end(instances, collected), all);
  report(2, "three-ball structure", three_balls(collected), all);
  std::vector<Removal> rms;
  report(3, "ball removal", removals(instances, rms, collected), all);
  report(4, "new boundary", new_boundary(rms), all);
  report(5, "duality", duality(instances, collected), all);
  report(6, "kernel oracle", oracle(collected), all);
  report(7, "reduction engine", reduction_engine(instances), all);
  report(8, "graph-level standardness", graph_standardness(), all);
  return all ? 0 : 1;
}
