#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballsteinitz/ball_kernel.hpp"
#include "ballsteinitz/plane_graph.hpp"
#include "ballsteinitz/reduction.hpp"

namespace ballsteinitz {

struct RealizerOptions {
  Tolerance tol;
  double theta0 = 0.2;        // first rotation angle tried, radians
  double angle_floor = 1e-6;  // smallest angle tried
  int max_bisection = 20;     // halvings of theta0 before giving up
  SearchLimits limits;
};

enum class MoveKind { RemoveBall, AddRotatedBall, DualizeIn, DualizeOut };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);
std::string to_string(InsertVariant v);
InsertVariant insert_variant_from_string(const std::string& s);

/// One change to the center set. Replaying the moves from the seed
/// reproduces the final centers exactly.
struct GeometricMove {
  MoveKind kind = MoveKind::RemoveBall;
  int ball = -1;                     // removed or added center id
  Point3 center = Point3::Zero();    // its position
  int source = -1;                   // center that was rotated
  Rotation3 rotation;
  std::optional<InsertVariant> variant;
};

/// A ball polyhedron together with the plane graph it realizes. vertex_of
/// and edge_of map graph ids to complex indices.
struct RealizationState {
  BallPolyhedron polyhedron;
  BoundaryComplex complex;
  PlaneGraph target;
  std::map<VertexId, int> vertex_of;
  std::map<EdgeId, int> edge_of;
  std::vector<GeometricMove> history;
};

class RealizationError : public std::runtime_error {
 public:
  RealizationError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(what), step_(step) {}
  std::optional<std::size_t> step() const { return step_; }
  /// State reached before the failing operation, when known.
  std::optional<RealizationState> state;

 private:
  std::optional<std::size_t> step_;
};

/// Regular tetrahedron of edge 0.6 about the origin, realizing K4.
RealizationState seed_k4(const RealizerOptions& opts = {});

/// Points the state at `expected`, choosing the isomorphism onto the
/// complex's edge-graph that agrees best with the hints. Throws
/// RealizationError if the complex does not realize `expected`, or is not
/// standard while `expected` is.
void bind_target(RealizationState& s, const PlaneGraph& expected,
                 const std::map<VertexId, int>& vertex_hint = {},
                 const std::map<EdgeId, int>& edge_hint = {});

/// Center id of the sphere carrying a face of s.target.
int face_sphere(const RealizationState& s, const Face& f);

/// Removes the ball of the triangular face on `corners`. The resulting
/// edge-graph must be the simple Delta-to-Y reduction of the old one, and
/// exactly one of the two common points of the neighbouring spheres must
/// appear as a new vertex while the other lies inside the removed ball.
RealizationState remove_triangle_ball(const RealizationState& s,
                                      const std::array<VertexId, 3>& corners,
                                      const NewIds& ids = {}, const RealizerOptions& opts = {});

/// Where to add a ball: edges e13 and e32 meet at the degree-3 vertex
/// `center` and bound a common face.
struct InsertionSite {
  InsertVariant variant = InsertVariant::I;
  VertexId center = -1;
  EdgeId e13 = -1;
  EdgeId e32 = -1;
  InsertIds ids;
};

/// Adds a copy of the ball behind the face between e13 and e32, rotated by a
/// small angle about an axis through two points of that face's boundary.
RealizationState add_rotated_ball(const RealizationState& s, const InsertionSite& site,
                                  const RealizerOptions& opts = {});

/// Dual polyhedron of a standard state; the target becomes dual(s.target).
RealizationState dualize(const RealizationState& s, MoveKind kind = MoveKind::DualizeIn);

/// Undoes a Y-to-Delta step: s must realize the step's post-graph.
RealizationState invert_step(const RealizationState& s, const ReductionStep& step,
                             const RealizerOptions& opts = {});

/// Undoes a Delta-to-Y step by working on the dual polyhedron.
RealizationState invert_delta_step_via_dual(const RealizationState& s, const ReductionStep& step,
                                            const RealizerOptions& opts = {});

struct Realization {
  BallPolyhedron polyhedron;
  BoundaryComplex complex;
  ReductionTrace trace;
  std::vector<GeometricMove> moves;
  std::map<VertexId, int> vertex_of;
  std::map<EdgeId, int> edge_of;
};

/// Standard ball polyhedron whose edge-graph is g.
Realization realize(const PlaneGraph& g, const RealizerOptions& opts = {});

/// Applies moves to the seed centers.
BallPolyhedron replay_moves(const std::vector<GeometricMove>& moves, const Tolerance& tol = {});

}  // namespace ballsteinitz
