#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ballsteinitz/ball_kernel.hpp"
#include "ballsteinitz/config.hpp"
#include "ballsteinitz/json_io.hpp"
#include "ballsteinitz/realizer.hpp"
#include "ballsteinitz/reduction.hpp"

namespace bs = ballsteinitz;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kBadInput = 2;
constexpr int kExhausted = 3;

struct Overrides {
  std::optional<double> eps_geom;
  std::optional<double> eps_feature;
  std::optional<double> theta0;
  std::optional<int> max_bisection;
  std::optional<double> tess_step;
  std::optional<std::uint64_t> seed;
  std::string out;
};

bs::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bs::FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return bs::parse_json(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bs::Config make_config(const Overrides& o) {
  bs::Config c = bs::config_from_environment();
  if (o.eps_geom) c.eps_geom = *o.eps_geom;
  if (o.eps_feature) c.eps_feature = *o.eps_feature;
  if (o.theta0) c.theta0 = *o.theta0;
  if (o.max_bisection) c.max_bisection = *o.max_bisection;
  if (o.tess_step) c.tess_step = *o.tess_step;
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

// Centers file tolerances apply unless overridden on the command line.
bs::BallPolyhedron load_centers(const std::string& path, const Overrides& o, const bs::Config& c) {
  const bs::Json j = read_json(path);
  bs::BallPolyhedron p = bs::centers_from_json(j);
  if (!j.contains("eps_geom") || o.eps_geom) p.tol.eps_geom = c.eps_geom;
  if (!j.contains("eps_feature") || o.eps_feature) p.tol.eps_feature = c.eps_feature;
  try {
    p.tol.validate();
  } catch (const bs::GeometryError& e) {
    throw bs::FormatError(e.what());
  }
  return p;
}

int cmd_reduce(const std::string& graph, const Overrides& o) {
  make_config(o);
  const bs::NamedGraph g = bs::graph_from_json(read_json(graph));
  const bs::ReductionTrace t = bs::reduce_to_k4(g.graph);
  write_text(o.out, bs::dump_json(bs::trace_to_json(t)));
  return kOk;
}

int cmd_realize(const std::string& graph, const Overrides& o) {
  const bs::Config c = make_config(o);
  const bs::NamedGraph g = bs::graph_from_json(read_json(graph));
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  fs::create_directories(dir);
  try {
    const bs::Realization r = bs::realize(g.graph, c.realizer_options());
    write_text((dir / "centers.json").string(), bs::dump_json(bs::centers_to_json(r.polyhedron)));
    write_text((dir / "certificate.json").string(), bs::dump_json(bs::certificate_to_json(r, &g)));
  } catch (const bs::RealizationError& e) {
    bs::Json diag = {{"schema", bs::kSchemaVersion}, {"error", e.what()}};
    if (e.step()) diag["failing_step"] = *e.step();
    if (e.state) {
      diag["state"] = {{"centers", bs::centers_to_json(e.state->polyhedron)},
                       {"target", bs::graph_to_json(e.state->target)}};
      bs::Json moves = bs::Json::array();
      for (const auto& m : e.state->history) moves.push_back(bs::move_to_json(m));
      diag["state"]["moves"] = moves;
    }
    write_text((dir / "diagnostic.json").string(), bs::dump_json(diag));
    throw;
  }
  return kOk;
}

int cmd_kernel(const std::string& centers, const Overrides& o) {
  const bs::Config c = make_config(o);
  const bs::BoundaryComplex cx = bs::compute_boundary(load_centers(centers, o, c));
  write_text(o.out, bs::dump_json(bs::complex_to_json(cx)));
  return kOk;
}

int cmd_verify(const std::string& centers, const std::string& graph, const Overrides& o) {
  const bs::Config c = make_config(o);
  const bs::NamedGraph g = bs::graph_from_json(read_json(graph));
  const bs::BoundaryComplex cx = bs::compute_boundary(load_centers(centers, o, c));
  const auto cert = bs::is_standard_polyhedron(cx);
  bs::Json report = {{"schema", bs::kSchemaVersion},
                     {"standard", cert.standard},
                     {"violations", cert.violations}};
  std::optional<bs::PlaneMatch> match;
  try {
    match = bs::plane_isomorphism(g.graph, bs::edge_graph(cx));
  } catch (const bs::GeometryError& e) {
    report["edge_graph_error"] = e.what();
  }
  report["isomorphic"] = match.has_value();
  if (match) {
    bs::Json vmap = bs::Json::object();
    for (const auto& [v, w] : match->vertices) vmap[g.name(v)] = w;
    report["isomorphism"] = vmap;
  }
  write_text(o.out, bs::dump_json(report));
  return match && cert.standard ? kOk : kFailure;
}

int cmd_dual(const std::string& centers, const Overrides& o) {
  const bs::Config c = make_config(o);
  const bs::BallPolyhedron p = load_centers(centers, o, c);
  const bs::DualPolyhedron d = bs::dual_polyhedron(p, bs::compute_boundary(p));
  write_text(o.out, bs::dump_json(bs::centers_to_json(d.polyhedron)));
  return kOk;
}

int cmd_export(const std::string& centers, const Overrides& o) {
  const bs::Config c = make_config(o);
  const bs::BoundaryComplex cx = bs::compute_boundary(load_centers(centers, o, c));
  write_text(o.out, bs::export_obj(cx, c.tess_step));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realize 3-connected plane graphs as standard ball polyhedra"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--eps-geom", o.eps_geom, "coincidence tolerance");
  app.add_option("--eps-feature", o.eps_feature, "smallest admissible feature");
  app.add_option("--theta0", o.theta0, "first rotation angle in radians");
  app.add_option("--max-bisection", o.max_bisection, "halvings of the rotation angle");
  app.add_option("--tess-step", o.tess_step, "OBJ tessellation step in degrees");
  app.add_option("--seed", o.seed, "seed for randomized utilities");
  app.add_option("--out", o.out, "output file (realize: output directory)");

  std::string graph;
  std::string centers;
  int code = kOk;

  auto* reduce = app.add_subcommand("reduce", "reduce a graph to K4, writing the trace");
  reduce->add_option("graph", graph, "graph JSON")->required();
  reduce->callback([&] { code = cmd_reduce(graph, o); });

  auto* realize = app.add_subcommand("realize", "write centers.json and certificate.json");
  realize->add_option("graph", graph, "graph JSON")->required();
  realize->callback([&] { code = cmd_realize(graph, o); });

  auto* kernel = app.add_subcommand("kernel", "boundary complex of a center set");
  kernel->add_option("centers", centers, "centers JSON")->required();
  kernel->callback([&] { code = cmd_kernel(centers, o); });

  auto* verify = app.add_subcommand("verify", "check a center set against a graph");
  verify->add_option("centers", centers, "centers JSON")->required();
  verify->add_option("graph", graph, "graph JSON")->required();
  verify->callback([&] { code = cmd_verify(centers, graph, o); });

  auto* dual = app.add_subcommand("dual", "centers of the dual polyhedron");
  dual->add_option("centers", centers, "centers JSON")->required();
  dual->callback([&] { code = cmd_dual(centers, o); });

  auto* exp = app.add_subcommand("export", "Wavefront OBJ mesh of the boundary");
  exp->add_option("centers", centers, "centers JSON")->required();
  exp->callback([&] { code = cmd_export(centers, o); });

  for (auto* sub : {reduce, realize, kernel, verify, dual, exp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  } catch (const bs::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const bs::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const bs::SearchExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return code;
}
