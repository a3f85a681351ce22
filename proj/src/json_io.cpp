#include "ballsteinitz/json_io.hpp"

#include <map>
#include <set>

namespace ballsteinitz {

namespace {

std::string name_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw FormatError("vertex names must be strings or integers");
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("bad value for ") + what);
  }
}

Json point_json(const Point3& p) { return Json::array({p.x(), p.y(), p.z()}); }

Point3 point_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("a point needs three coordinates");
  for (const auto& x : j)
    if (!x.is_number()) throw FormatError("coordinates must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json edge_json(const Edge& e) { return Json::array({e.u, e.v}); }
Edge edge_from(const Json& j) {
  const auto v = get_as<std::vector<int>>(j, "edge ends");
  if (v.size() != 2) throw FormatError("an edge needs two ends");
  return {v[0], v[1]};
}

void check_schema(const Json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw FormatError("unsupported schema version");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Graphs.

NamedGraph graph_from_json(const Json& j) {
  check_schema(j);
  const Json& vs = field(j, "vertices");
  const Json& adj = field(j, "adjacency");
  if (!vs.is_array() || !adj.is_object()) throw FormatError("vertices must be a list and adjacency an object");
  NamedGraph out;
  std::map<std::string, VertexId> id;
  for (const auto& v : vs) {
    const std::string n = name_of(v);
    if (id.count(n)) throw FormatError("duplicate vertex " + n);
    id[n] = static_cast<VertexId>(out.names.size());
    out.names.push_back(n);
  }
  std::map<VertexId, std::vector<VertexId>> ccw;
  for (const auto& [n, v] : id) ccw[v];
  for (const auto& [key, list] : adj.items()) {
    if (!id.count(key)) throw FormatError("adjacency of unknown vertex " + key);
    if (!list.is_array()) throw FormatError("adjacency of " + key + " must be a list");
    for (const auto& nb : list) {
      const std::string m = name_of(nb);
      if (!id.count(m)) throw FormatError("unknown neighbour " + m);
      ccw[id.at(key)].push_back(id.at(m));
    }
  }
  try {
    if (j.contains("edges") && j.contains("rotation")) {
      PlaneGraph g;
      for (const auto& [n, v] : id) g.add_vertex(v);
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer())
          throw FormatError("edges are [id, u, v] triples");
        const std::string a = name_of(e[1]);
        const std::string b = name_of(e[2]);
        if (!id.count(a) || !id.count(b)) throw FormatError("edge with unknown end");
        g.add_edge(id.at(a), id.at(b), e[0].get<EdgeId>());
      }
      for (const auto& [key, list] : j.at("rotation").items()) {
        if (!id.count(key)) throw FormatError("rotation of unknown vertex " + key);
        g.set_rotation(id.at(key), get_as<std::vector<EdgeId>>(list, "rotation"));
      }
      g.check_consistent();
      for (const auto& [v, nbrs] : ccw) {
        std::vector<VertexId> from_rot;
        for (EdgeId e : g.rotation(v)) from_rot.push_back(g.edge(e).other(v));
        if (from_rot != nbrs) throw FormatError("rotation disagrees with adjacency at " + out.name(v));
      }
      out.graph = g;
    } else {
      out.graph = PlaneGraph::from_neighbors(ccw);
    }
  } catch (const GraphError& e) {
    throw FormatError(std::string("inconsistent graph: ") + e.what());
  }
  return out;
}

namespace {

template <typename Name>
Json graph_json(const PlaneGraph& g, Name name) {
  Json vs = Json::array();
  Json adj = Json::object();
  Json rot = Json::object();
  for (VertexId v : g.vertices()) {
    vs.push_back(name(v));
    Json nbrs = Json::array();
    for (EdgeId e : g.rotation(v)) nbrs.push_back(name(g.edge(e).other(v)));
    adj[name(v)] = nbrs;
    rot[name(v)] = g.rotation(v);
  }
  Json es = Json::array();
  for (EdgeId e : g.edge_ids()) es.push_back(Json::array({e, name(g.edge(e).u), name(g.edge(e).v)}));
  return {{"schema", kSchemaVersion}, {"vertices", vs}, {"adjacency", adj}, {"edges", es}, {"rotation", rot}};
}

}  // namespace

Json graph_to_json(const NamedGraph& ng) {
  return graph_json(ng.graph, [&](VertexId v) { return ng.name(v); });
}

Json graph_to_json(const PlaneGraph& g) {
  return graph_json(g, [](VertexId v) { return std::to_string(v); });
}

namespace {

// Graph JSON written by graph_to_json(PlaneGraph): names are the ids.
PlaneGraph id_graph_from_json(const Json& j) {
  const NamedGraph ng = graph_from_json(j);
  PlaneGraph g;
  std::vector<VertexId> real;
  for (const auto& n : ng.names) {
    try {
      real.push_back(std::stoi(n));
    } catch (const std::exception&) {
      throw FormatError("trace graphs must use integer vertex names");
    }
  }
  for (VertexId v : real) g.add_vertex(v);
  for (EdgeId e : ng.graph.edge_ids()) {
    const Edge& ends = ng.graph.edge(e);
    g.add_edge(real[static_cast<std::size_t>(ends.u)], real[static_cast<std::size_t>(ends.v)], e);
  }
  for (VertexId v : ng.graph.vertices()) g.set_rotation(real[static_cast<std::size_t>(v)], ng.graph.rotation(v));
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Traces.

namespace {

Json op_to_json(const ElementaryOp& op) {
  return std::visit(
      [](const auto& o) -> Json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, DeltaToYOp>) {
          return {{"op", "DeltaToY"}, {"corners", o.corners}, {"sides", o.sides},
                  {"center", o.center}, {"spokes", o.spokes}};
        } else if constexpr (std::is_same_v<T, YToDeltaOp>) {
          return {{"op", "YToDelta"}, {"center", o.center}, {"corners", o.corners},
                  {"spokes", o.spokes}, {"sides", o.sides}};
        } else if constexpr (std::is_same_v<T, SeriesOp>) {
          return {{"op", "Series"},
                  {"vertex", o.vertex},
                  {"kept", o.kept},
                  {"removed", o.removed},
                  {"kept_before", edge_json(o.kept_before)},
                  {"removed_before", edge_json(o.removed_before)},
                  {"vertex_rotation", o.vertex_rotation}};
        } else {
          return {{"op", "Parallel"},         {"kept", o.kept},
                  {"removed", o.removed},     {"removed_ends", edge_json(o.removed_ends)},
                  {"pred_at_u", o.pred_at_u}, {"pred_at_v", o.pred_at_v}};
        }
      },
      op);
}

template <typename T>
T num(const Json& j, const char* key) {
  return get_as<T>(field(j, key), key);
}

ElementaryOp op_from_json(const Json& j) {
  const std::string kind = num<std::string>(j, "op");
  if (kind == "DeltaToY")
    return DeltaToYOp{num<std::array<VertexId, 3>>(j, "corners"), num<std::array<EdgeId, 3>>(j, "sides"),
                      num<VertexId>(j, "center"), num<std::array<EdgeId, 3>>(j, "spokes")};
  if (kind == "YToDelta")
    return YToDeltaOp{num<VertexId>(j, "center"), num<std::array<VertexId, 3>>(j, "corners"),
                      num<std::array<EdgeId, 3>>(j, "spokes"), num<std::array<EdgeId, 3>>(j, "sides")};
  if (kind == "Series")
    return SeriesOp{num<VertexId>(j, "vertex"),
                    num<EdgeId>(j, "kept"),
                    num<EdgeId>(j, "removed"),
                    edge_from(field(j, "kept_before")),
                    edge_from(field(j, "removed_before")),
                    num<std::vector<EdgeId>>(j, "vertex_rotation")};
  if (kind == "Parallel")
    return ParallelOp{num<EdgeId>(j, "kept"), num<EdgeId>(j, "removed"),
                      edge_from(field(j, "removed_ends")), num<EdgeId>(j, "pred_at_u"),
                      num<EdgeId>(j, "pred_at_v")};
  throw FormatError("unknown operation " + kind);
}

}  // namespace

Json step_to_json(const ReductionStep& s) {
  Json site;
  if (s.site.direction == Direction::YToDelta)
    site = {{"vertex", s.site.vertex}};
  else
    site = {{"triangle", s.site.triangle}};
  Json sp = Json::array();
  for (std::size_t i = 1; i < s.ops.size(); ++i) sp.push_back(op_to_json(s.ops[i]));
  return {{"direction", to_string(s.site.direction)},
          {"site", site},
          {"site_type", to_string(s.site_type)},
          {"delta_y", op_to_json(s.ops.front())},
          {"sp_record", sp},
          {"maps",
           {{"added_vertices", s.added_vertices()},
            {"removed_vertices", s.removed_vertices()},
            {"added_edges", s.added_edges()},
            {"removed_edges", s.removed_edges()}}}};
}

ReductionStep step_from_json(const Json& j) {
  ReductionStep s;
  try {
    s.site.direction = direction_from_string(num<std::string>(j, "direction"));
    s.site_type = site_type_from_string(num<std::string>(j, "site_type"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  const Json& site = field(j, "site");
  if (s.site.direction == Direction::YToDelta)
    s.site.vertex = num<VertexId>(site, "vertex");
  else
    s.site.triangle = num<std::array<VertexId, 3>>(site, "triangle");
  s.ops.push_back(op_from_json(field(j, "delta_y")));
  for (const auto& op : field(j, "sp_record")) s.ops.push_back(op_from_json(op));
  return s;
}

Json trace_to_json(const ReductionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(step_to_json(s));
  Json gs = Json::array();
  for (const auto& g : t.graphs) gs.push_back(graph_to_json(g));
  return {{"schema", kSchemaVersion},
          {"steps", steps},
          {"graphs", gs},
          {"stats",
           {{"states_expanded", t.stats.states_expanded},
            {"states_generated", t.stats.states_generated},
            {"rounds", t.stats.rounds},
            {"final_slack", t.stats.final_slack}}}};
}

ReductionTrace trace_from_json(const Json& j) {
  check_schema(j);
  ReductionTrace t;
  for (const auto& s : field(j, "steps")) t.steps.push_back(step_from_json(s));
  for (const auto& g : field(j, "graphs")) t.graphs.push_back(id_graph_from_json(g));
  if (t.graphs.size() != t.steps.size() + 1) throw FormatError("a trace needs one more graph than steps");
  if (j.contains("stats")) {
    const Json& st = j.at("stats");
    t.stats.states_expanded = num<std::size_t>(st, "states_expanded");
    t.stats.states_generated = num<std::size_t>(st, "states_generated");
    t.stats.rounds = num<std::size_t>(st, "rounds");
    t.stats.final_slack = num<std::size_t>(st, "final_slack");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Centers and complexes.

BallPolyhedron centers_from_json(const Json& j) {
  check_schema(j);
  const Json& cs = field(j, "centers");
  if (!cs.is_array()) throw FormatError("centers must be a list");
  BallPolyhedron p;
  if (j.contains("eps_geom")) p.tol.eps_geom = num<double>(j, "eps_geom");
  if (j.contains("eps_feature")) p.tol.eps_feature = num<double>(j, "eps_feature");
  std::vector<int> ids;
  if (j.contains("ids")) {
    ids = num<std::vector<int>>(j, "ids");
    if (ids.size() != cs.size()) throw FormatError("ids and centers differ in length");
  } else {
    for (std::size_t i = 0; i < cs.size(); ++i) ids.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (!p.centers.emplace(ids[i], point_from(cs[i])).second) throw FormatError("duplicate center id");
  return p;
}

Json centers_to_json(const BallPolyhedron& p) {
  Json cs = Json::array();
  Json ids = Json::array();
  for (const auto& [id, c] : p.centers) {
    cs.push_back(point_json(c));
    ids.push_back(id);
  }
  return {{"schema", kSchemaVersion},
          {"centers", cs},
          {"ids", ids},
          {"eps_geom", p.tol.eps_geom},
          {"eps_feature", p.tol.eps_feature}};
}

Json complex_to_json(const BoundaryComplex& c) {
  Json vs = Json::array();
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    vs.push_back({{"id", i}, {"point", point_json(c.vertices[i].point)}, {"spheres", c.vertices[i].spheres}});
  Json es = Json::array();
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto& e = c.edges[i];
    es.push_back({{"id", i},
                  {"spheres", e.spheres},
                  {"start", e.start},
                  {"end", e.end},
                  {"circle",
                   {{"center", point_json(e.arc.circle.center)},
                    {"radius", e.arc.circle.radius},
                    {"normal", point_json(e.arc.circle.normal)}}},
                  {"arc", {{"start", e.arc.start}, {"span", e.arc.span}, {"full", e.arc.full}}}});
  }
  Json fs = Json::array();
  for (const auto& f : c.faces) {
    Json cycles = Json::array();
    for (const auto& cy : f.cycles) cycles.push_back({{"edges", cy.edges}, {"forward", cy.forward}});
    fs.push_back({{"sphere", f.sphere}, {"cycles", cycles}});
  }
  const auto cert = is_standard_polyhedron(c);
  const long euler = static_cast<long>(c.vertices.size()) - static_cast<long>(c.edges.size()) +
                     static_cast<long>(c.faces.size());
  Json centers = Json::object();
  for (const auto& [id, x] : c.centers) centers[std::to_string(id)] = point_json(x);
  return {{"schema", kSchemaVersion},
          {"centers", centers},
          {"counts", {{"vertices", c.vertices.size()}, {"edges", c.edges.size()}, {"faces", c.faces.size()}}},
          {"euler", euler},
          {"standard", cert.standard},
          {"violations", cert.violations},
          {"vertices", vs},
          {"edges", es},
          {"faces", fs}};
}

// ---------------------------------------------------------------------------
// Moves and certificates.

Json move_to_json(const GeometricMove& m) {
  Json j = {{"kind", to_string(m.kind)}};
  if (m.kind == MoveKind::RemoveBall || m.kind == MoveKind::AddRotatedBall) {
    j["ball"] = m.ball;
    j["center"] = point_json(m.center);
  }
  if (m.kind == MoveKind::AddRotatedBall) {
    j["source"] = m.source;
    j["rotation"] = {{"axis_point", point_json(m.rotation.axis_point)},
                     {"axis_dir", point_json(m.rotation.axis_dir)},
                     {"angle", m.rotation.angle}};
    if (m.variant) j["case"] = to_string(*m.variant);
  }
  return j;
}

GeometricMove move_from_json(const Json& j) {
  GeometricMove m;
  try {
    m.kind = move_kind_from_string(num<std::string>(j, "kind"));
    if (m.kind == MoveKind::RemoveBall || m.kind == MoveKind::AddRotatedBall) {
      m.ball = num<int>(j, "ball");
      m.center = point_from(field(j, "center"));
    }
    if (m.kind == MoveKind::AddRotatedBall) {
      m.source = num<int>(j, "source");
      const Json& r = field(j, "rotation");
      m.rotation = {point_from(field(r, "axis_point")), point_from(field(r, "axis_dir")),
                    num<double>(r, "angle")};
      if (j.contains("case")) m.variant = insert_variant_from_string(num<std::string>(j, "case"));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

Json certificate_to_json(const Realization& r, const NamedGraph* names) {
  Json moves = Json::array();
  for (const auto& m : r.moves) moves.push_back(move_to_json(m));
  Json vmap = Json::object();
  for (const auto& [v, c] : r.vertex_of)
    vmap[names ? names->name(v) : std::to_string(v)] = c;
  Json emap = Json::object();
  for (const auto& [e, c] : r.edge_of) emap[std::to_string(e)] = c;
  return {{"schema", kSchemaVersion},
          {"trace", trace_to_json(r.trace)},
          {"moves", moves},
          {"centers", centers_to_json(r.polyhedron)},
          {"isomorphism", {{"vertices", vmap}, {"edges", emap}}}};
}

}  // namespace ballsteinitz
