#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ballsteinitz/ball_kernel.hpp"
#include "ballsteinitz/plane_graph.hpp"
#include "ballsteinitz/realizer.hpp"
#include "ballsteinitz/reduction.hpp"

namespace ballsteinitz {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kSchemaVersion = 1;

/// A plane graph read from JSON. Vertex i of `graph` is `names[i]`.
struct NamedGraph {
  PlaneGraph graph;
  std::vector<std::string> names;

  const std::string& name(VertexId v) const { return names.at(static_cast<std::size_t>(v)); }
};

/// Reads {"vertices":[...],"adjacency":{name:[ccw neighbours]}}. Names may be
/// strings or integers. Optional "edges" ({id:[u,v]}) and "rotation"
/// ({name:[edge ids]}) pin down edge ids exactly.
NamedGraph graph_from_json(const Json& j);
/// Vertex names are the decimal ids; includes edge ids and rotations.
Json graph_to_json(const PlaneGraph& g);
Json graph_to_json(const NamedGraph& g);

Json step_to_json(const ReductionStep& s);
ReductionStep step_from_json(const Json& j);
Json trace_to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const Json& j);

/// {"centers":[[x,y,z],...],"eps_geom":..,"eps_feature":..}; an optional
/// "ids" list keys the centers, otherwise ids are list positions.
BallPolyhedron centers_from_json(const Json& j);
Json centers_to_json(const BallPolyhedron& p);

Json complex_to_json(const BoundaryComplex& c);

Json move_to_json(const GeometricMove& m);
GeometricMove move_from_json(const Json& j);

/// {trace, moves, centers, isomorphism}. Isomorphism keys are the input's
/// vertex names when given.
Json certificate_to_json(const Realization& r, const NamedGraph* names = nullptr);

/// Parses text, mapping syntax errors to FormatError.
Json parse_json(const std::string& text);
/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace ballsteinitz
