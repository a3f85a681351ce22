#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ballsteinitz {

using Point3 = Eigen::Vector3d;
using Vec3 = Eigen::Vector3d;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double eps_geom = 1e-9;     // coincidence and incidence
  double eps_feature = 1e-6;  // smallest admissible feature

  /// Throws unless 0 < eps_geom < eps_feature < 1e-2.
  void validate() const;
};

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Maps an angle into [0, 2pi).
double canonical_angle(double t);

/// Circle in space with a fixed in-plane frame (u, w, normal) that is
/// right-handed, so parameter angles increase counterclockwise about normal.
struct Circle3 {
  Point3 center = Point3::Zero();
  double radius = 0.0;
  Vec3 normal = Vec3::UnitZ();
  Vec3 u = Vec3::UnitX();
  Vec3 w = Vec3::UnitY();

  static Circle3 make(const Point3& center, double radius, const Vec3& normal);

  Point3 at(double t) const;
  /// Unit tangent in the direction of increasing t.
  Vec3 tangent(double t) const;
  /// Parameter of the projection of p onto the circle plane.
  double parameter_of(const Point3& p) const;
};

/// Arc running counterclockwise from `start` through `span` radians.
struct Arc3 {
  Circle3 circle;
  double start = 0.0;
  double span = 0.0;
  bool full = false;

  double end() const { return canonical_angle(start + span); }
  double length() const { return circle.radius * span; }
  Point3 point(double fraction) const { return circle.at(start + fraction * span); }
};

struct Rotation3 {
  Point3 axis_point = Point3::Zero();
  Vec3 axis_dir = Vec3::UnitZ();
  double angle = 0.0;
};

Point3 rotate(const Point3& p, const Rotation3& r);

struct SphereIntersection {
  enum class Kind { Empty, Tangent, Circle };
  Kind kind = Kind::Empty;
  Circle3 circle;
  Point3 point = Point3::Zero();  // Tangent
};

/// Intersection of the unit spheres about c1 and c2; the circle normal points
/// from c1 to c2.
SphereIntersection sphere_sphere_circle(const Point3& c1, const Point3& c2,
                                        const Tolerance& tol = {});

struct TriplePoints {
  enum class Kind { None, Double, Pair };
  Kind kind = Kind::None;
  /// q lies on the side of (c2 - c1) x (c3 - c1); qbar is its mirror image.
  Point3 q = Point3::Zero();
  Point3 qbar = Point3::Zero();
};

/// Common points of three unit spheres. Throws GeometryError for collinear centers.
TriplePoints triple_sphere_points(const Point3& c1, const Point3& c2, const Point3& c3,
                                  const Tolerance& tol = {});

/// Counterclockwise angular interval.
struct AngleInterval {
  double start = 0.0;
  double span = 0.0;

  bool full() const { return span >= kTwoPi; }
  bool contains(double t, double slack = 0.0) const;
};

/// Sorted, disjoint intervals on the circle; a single full interval means
/// the whole circle.
using IntervalSet = std::vector<AngleInterval>;

IntervalSet full_circle();
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// Parameter angles of points of `c` inside the closed unit ball about x.
IntervalSet circle_ball_clip(const Circle3& c, const Point3& x);

double circumradius(const Point3& a, const Point3& b, const Point3& c);
Point3 circumcenter(const Point3& a, const Point3& b, const Point3& c);

struct EnclosingBall {
  Point3 center = Point3::Zero();
  double radius = 0.0;
};

/// Smallest ball containing all points.
EnclosingBall minimum_enclosing_ball(const std::vector<Point3>& points);

}  // namespace ballsteinitz
