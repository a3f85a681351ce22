#include <cmath>
#include <random>

#include "ballsteinitz/geometry.hpp"
#include "doctest.h"

using namespace ballsteinitz;
using doctest::Approx;

namespace {

Point3 random_point(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("tolerance validation") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{1e-6, 1e-9}.validate()), GeometryError);
  CHECK_THROWS_AS((Tolerance{0.0, 1e-6}.validate()), GeometryError);
}

TEST_CASE("canonical angles") {
  CHECK(canonical_angle(-0.5) == Approx(kTwoPi - 0.5));
  CHECK(canonical_angle(kTwoPi + 1.0) == Approx(1.0));
  CHECK(canonical_angle(kTwoPi) == 0.0);
}

TEST_CASE("sphere-sphere circle") {
  const auto s = sphere_sphere_circle({0, 0, 0}, {1, 0, 0});
  REQUIRE(s.kind == SphereIntersection::Kind::Circle);
  CHECK(s.circle.center.isApprox(Point3(0.5, 0, 0)));
  CHECK(s.circle.radius == Approx(0.8660254));
  CHECK(s.circle.normal.isApprox(Vec3(1, 0, 0)));

  const auto t = sphere_sphere_circle({0, 0, 0}, {2, 0, 0});
  REQUIRE(t.kind == SphereIntersection::Kind::Tangent);
  CHECK(t.point.isApprox(Point3(1, 0, 0)));

  CHECK(sphere_sphere_circle({0, 0, 0}, {3, 0, 0}).kind == SphereIntersection::Kind::Empty);
  CHECK_THROWS_AS(sphere_sphere_circle({0, 0, 0}, {0, 0, 0}), GeometryError);
}

TEST_CASE("circle points lie on both spheres") {
  std::mt19937 rng(1);
  const Tolerance tol;
  for (int trial = 0; trial < 50; ++trial) {
    const Point3 a = random_point(rng, 0.5);
    const Point3 b = random_point(rng, 0.5);
    const auto s = sphere_sphere_circle(a, b);
    REQUIRE(s.kind == SphereIntersection::Kind::Circle);
    CHECK(s.circle.u.cross(s.circle.w).isApprox(s.circle.normal));
    for (int i = 0; i < 100; ++i) {
      const Point3 p = s.circle.at(kTwoPi * i / 100.0);
      CHECK(std::abs((p - a).norm() - 1.0) <= tol.eps_geom);
      CHECK(std::abs((p - b).norm() - 1.0) <= tol.eps_geom);
      CHECK(s.circle.parameter_of(p) == Approx(canonical_angle(kTwoPi * i / 100.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("triple sphere points") {
  const Point3 c1(0, 0, 0), c2(1, 0, 0), c3(0.5, std::sqrt(3.0) / 2.0, 0);
  const auto t = triple_sphere_points(c1, c2, c3);
  REQUIRE(t.kind == TriplePoints::Kind::Pair);
  // Circumcenter of the equilateral triangle, lifted by sqrt(1 - 1/3).
  const Point3 expected(0.5, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0));
  CHECK((t.q - expected).norm() < 1e-12);
  CHECK((t.qbar - Point3(expected.x(), expected.y(), -expected.z())).norm() < 1e-12);
  CHECK(t.q.x() == Approx(0.5));
  CHECK(t.q.y() == Approx(0.2886751));
  CHECK(t.q.z() == Approx(0.8164966));

  CHECK_THROWS_AS(triple_sphere_points(c1, c2, {2, 0, 0}), GeometryError);
  // Circumradius above one: no common point.
  CHECK(triple_sphere_points({0, 0, 0}, {1.9, 0, 0}, {0.95, 1.5, 0}).kind ==
        TriplePoints::Kind::None);
  // Circumradius exactly one: a double point.
  CHECK(triple_sphere_points({1, 0, 0}, {-1, 0, 0}, {0, 1, 0}).kind == TriplePoints::Kind::Double);
}

TEST_CASE("triple points satisfy all equations and mirror across the center plane") {
  std::mt19937 rng(2);
  const Tolerance tol;
  int checked = 0;
  while (checked < 200) {
    const Point3 a = random_point(rng, 0.5), b = random_point(rng, 0.5), c = random_point(rng, 0.5);
    if (circumradius(a, b, c) >= 0.99) continue;
    const auto t = triple_sphere_points(a, b, c);
    REQUIRE(t.kind == TriplePoints::Kind::Pair);
    for (const Point3& p : {t.q, t.qbar})
      for (const Point3& x : {a, b, c}) CHECK(std::abs((p - x).norm() - 1.0) <= tol.eps_geom);
    const Vec3 n = (b - a).cross(c - a).normalized();
    const Point3 reflected = t.q - 2.0 * n.dot(t.q - a) * n;
    CHECK((reflected - t.qbar).norm() <= tol.eps_geom);
    CHECK(n.dot(t.q - a) > 0.0);
    ++checked;
  }
}

TEST_CASE("circle clipped by a ball") {
  const auto circle = sphere_sphere_circle({0, 0, 0}, {1, 0, 0}).circle;
  SUBCASE("ball at the circle center keeps everything") {
    const auto s = circle_ball_clip(circle, {0.5, 0, 0});
    REQUIRE(s.size() == 1);
    CHECK(s[0].full());
  }
  SUBCASE("far ball removes everything") { CHECK(circle_ball_clip(circle, {0.5, 0, 5}).empty()); }
  SUBCASE("third center clips an arc ending at the triple points") {
    const Point3 x(0.5, std::sqrt(3.0) / 2.0, 0);
    const auto s = circle_ball_clip(circle, x);
    REQUIRE(s.size() == 1);
    const auto t = triple_sphere_points({0, 0, 0}, {1, 0, 0}, x);
    const Point3 p0 = circle.at(s[0].start);
    const Point3 p1 = circle.at(s[0].start + s[0].span);
    const bool forward = (p0 - t.q).norm() < 1e-12 && (p1 - t.qbar).norm() < 1e-12;
    const bool backward = (p0 - t.qbar).norm() < 1e-12 && (p1 - t.q).norm() < 1e-12;
    CHECK((forward || backward));
    CHECK((circle.at(s[0].start + 0.5 * s[0].span) - x).norm() < 1.0);
  }
}

TEST_CASE("clip agrees with pointwise membership") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto circle = sphere_sphere_circle(random_point(rng, 0.4), random_point(rng, 0.4)).circle;
    const Point3 x = random_point(rng, 0.8);
    const auto set = circle_ball_clip(circle, x);
    for (int i = 0; i < 360; ++i) {
      const double t = kTwoPi * (i + 0.5) / 360.0;
      const double dist = (circle.at(t) - x).norm();
      if (std::abs(dist - 1.0) < 1e-9) continue;
      bool in = false;
      for (const auto& iv : set) in = in || iv.contains(t);
      CHECK(in == (dist < 1.0));
    }
  }
}

TEST_CASE("interval intersection handles wraparound") {
  const IntervalSet a{{5.5, 2.0}};  // wraps past 2pi
  const IntervalSet b{{0.5, 1.0}};
  const auto c = intersect(a, b);
  REQUIRE(c.size() == 1);
  CHECK(c[0].start == Approx(0.5));
  CHECK(c[0].span == Approx(5.5 + 2.0 - kTwoPi - 0.5));
  const auto d = intersect(a, IntervalSet{{5.0, 1.0}});
  REQUIRE(d.size() == 1);
  CHECK(d[0].start == Approx(5.5));
  CHECK(d[0].span == Approx(0.5));
  const auto both = intersect(IntervalSet{{6.0, 3.0}}, IntervalSet{{1.0, 5.5}});
  CHECK(both.size() == 2);
  CHECK(intersect(full_circle(), b).size() == 1);
  CHECK(intersect(IntervalSet{}, b).empty());
}

TEST_CASE("rotation") {
  const Rotation3 r{{0, 0, 0}, {0, 0, 1}, kTwoPi / 4.0};
  CHECK((rotate({1, 0, 0}, r) - Point3(0, 1, 0)).norm() < 1e-15);
  CHECK((rotate({0.3, 0.2, 0.1}, Rotation3{{0, 0, 0}, {1, 1, 0}, 0.0}) - Point3(0.3, 0.2, 0.1)).norm() == 0.0);
  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    const Rotation3 q{random_point(rng, 1), random_point(rng, 1).normalized(), 0.7 * i};
    const Point3 on_axis = q.axis_point + 0.37 * q.axis_dir;
    CHECK((rotate(on_axis, q) - on_axis).norm() < 1e-12);
    const Point3 a = random_point(rng, 1), b = random_point(rng, 1);
    CHECK(std::abs((rotate(a, q) - rotate(b, q)).norm() - (a - b).norm()) < 1e-9);
  }
}

TEST_CASE("minimum enclosing ball") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point3> pts;
    const int n = 2 + trial % 9;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 1.0));
    const auto ball = minimum_enclosing_ball(pts);
    for (const auto& p : pts) CHECK((p - ball.center).norm() <= ball.radius + 1e-12);
    // Oracle: the smallest ball spanned by two or three points that covers all.
    double best = 1e300;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<std::pair<Point3, double>> cands{{0.5 * (pts[i] + pts[j]), 0.5 * (pts[i] - pts[j]).norm()}};
        for (int k = j + 1; k < n; ++k) {
          const Point3 m = circumcenter(pts[i], pts[j], pts[k]);
          cands.emplace_back(m, (m - pts[i]).norm());
          for (int l = k + 1; l < n; ++l) {
            Eigen::Matrix3d a;
            Eigen::Vector3d rhs;
            const Point3* q[3] = {&pts[j], &pts[k], &pts[l]};
            for (int r = 0; r < 3; ++r) {
              a.row(r) = (*q[r] - pts[i]).transpose();
              rhs(r) = 0.5 * (*q[r] - pts[i]).squaredNorm();
            }
            const Eigen::Vector3d off = a.fullPivLu().solve(rhs);
            cands.emplace_back(pts[i] + off, off.norm());
          }
        }
        for (const auto& [c, r] : cands) {
          bool covers = true;
          for (const auto& p : pts) covers = covers && (p - c).norm() <= r + 1e-12;
          if (covers) best = std::min(best, r);
        }
      }
    CHECK(ball.radius == Approx(best).epsilon(1e-9));
  }
}
