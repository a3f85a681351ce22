#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ballsteinitz/geometry.hpp"
#include "ballsteinitz/plane_graph.hpp"

namespace ballsteinitz {

/// A feature of the sphere arrangement is too small or too close to another
/// to be classified reliably.
class DegeneracyError : public GeometryError {
 public:
  DegeneracyError(const std::string& what, std::vector<int> centers);
  const std::vector<int>& centers() const { return centers_; }

 private:
  std::vector<int> centers_;
};

class NonStandardError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Intersection of the unit balls about `centers`, keyed by stable ids.
struct BallPolyhedron {
  std::map<int, Point3> centers;
  Tolerance tol;

  std::vector<Point3> points() const;
  /// Inside every ball, allowing `slack` beyond the unit radius.
  bool contains(const Point3& p, double slack = 0.0) const;
  int next_id() const { return centers.empty() ? 0 : centers.rbegin()->first + 1; }
};

/// Checks the circumradius bound and that no two centers coincide.
void validate_polyhedron(const BallPolyhedron& p);

/// Drops every center whose sphere contributes no face of positive area.
/// Ids are positions in the input list.
BallPolyhedron reduce_centers(const std::vector<Point3>& centers, const Tolerance& tol = {});
BallPolyhedron reduce_centers(const BallPolyhedron& p);

struct ComplexVertex {
  Point3 point = Point3::Zero();
  std::vector<int> spheres;  // sorted center ids
};

/// Arc of the circle shared by spheres[0] < spheres[1]. The circle normal
/// points from the first center to the second; `start` sits at the arc's
/// start angle.
struct ComplexEdge {
  Arc3 arc;
  std::array<int, 2> spheres{-1, -1};
  int start = -1;
  int end = -1;

  bool full() const { return arc.full; }
};

/// Boundary cycle of a face, with the face on the left seen from outside.
struct FaceCycle {
  std::vector<int> edges;
  std::vector<bool> forward;  // edge traversed from start to end
};

struct ComplexFace {
  int sphere = -1;
  std::vector<FaceCycle> cycles;  // empty for a face that is a whole sphere
};

struct BoundaryComplex {
  std::map<int, Point3> centers;
  Tolerance tol;
  std::vector<ComplexVertex> vertices;
  std::vector<ComplexEdge> edges;
  std::vector<ComplexFace> faces;  // sorted by sphere id

  /// Index into `faces`, or -1 if the sphere has no face.
  int face_index(int sphere) const;
  /// Sphere whose face lies to the left of the edge traversed from `tail`.
  int left_sphere(int edge, int tail) const;
  /// Direction in which the edge leaves vertex `v`.
  Vec3 departure(int edge, int v) const;
};

/// Vertices, edges and faces of the boundary. Throws DegeneracyError.
BoundaryComplex compute_boundary(const BallPolyhedron& p);

/// Edge-graph with vertex ids = complex vertex indices and edge ids =
/// complex edge indices; rotations are counterclockwise seen from outside.
/// Throws NonStandardError on full-circle edges or multi-cycle faces.
PlaneGraph edge_graph(const BoundaryComplex& c);

/// For every face of faces(edge_graph(c)), the sphere supporting it.
std::vector<int> graph_face_spheres(const BoundaryComplex& c, const PlaneGraph& g);

struct StandardnessCertificate {
  bool standard = false;
  std::vector<std::string> violations;
};

StandardnessCertificate is_standard_polyhedron(const BoundaryComplex& c);

/// Bijections between a complex and the complex of its dual polyhedron.
/// Dual sphere ids are primal vertex indices.
struct DualityCorrespondence {
  std::map<int, int> vertex_to_face;  // primal vertex -> dual sphere
  std::map<int, int> face_to_vertex;  // primal sphere -> dual vertex
  std::map<int, int> edge_to_edge;    // primal edge -> dual edge
};

struct DualPolyhedron {
  BallPolyhedron polyhedron;
  BoundaryComplex complex;
  DualityCorrespondence correspondence;
};

/// Polyhedron generated by the vertices of a standard complex.
DualPolyhedron dual_polyhedron(const BallPolyhedron& p, const BoundaryComplex& c);

/// Wavefront OBJ with one group per face; arcs are sampled every
/// `step_degrees`.
std::string export_obj(const BoundaryComplex& c, double step_degrees = 2.0);

}  // namespace ballsteinitz
