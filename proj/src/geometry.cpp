#include "ballsteinitz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ballsteinitz {

void Tolerance::validate() const {
  if (!(eps_geom > 0.0) || !(eps_feature > eps_geom) || !(eps_feature < 1e-2))
    throw GeometryError("tolerances must satisfy 0 < eps_geom < eps_feature < 1e-2");
}

double canonical_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Circle3 Circle3::make(const Point3& center, double radius, const Vec3& normal) {
  Circle3 c;
  c.center = center;
  c.radius = radius;
  c.normal = normal.normalized();
  Eigen::Index k = 0;
  c.normal.cwiseAbs().minCoeff(&k);
  c.u = c.normal.cross(Vec3::Unit(k)).normalized();
  c.w = c.normal.cross(c.u);
  return c;
}

Point3 Circle3::at(double t) const {
  return center + radius * (std::cos(t) * u + std::sin(t) * w);
}

Vec3 Circle3::tangent(double t) const { return -std::sin(t) * u + std::cos(t) * w; }

double Circle3::parameter_of(const Point3& p) const {
  const Vec3 d = p - center;
  return canonical_angle(std::atan2(d.dot(w), d.dot(u)));
}

Point3 rotate(const Point3& p, const Rotation3& r) {
  const Eigen::AngleAxisd aa(r.angle, r.axis_dir.normalized());
  return r.axis_point + aa * (p - r.axis_point);
}

SphereIntersection sphere_sphere_circle(const Point3& c1, const Point3& c2, const Tolerance& tol) {
  const Vec3 axis = c2 - c1;
  const double d = axis.norm();
  if (d <= tol.eps_geom) throw GeometryError("coincident sphere centers");
  SphereIntersection out;
  if (std::abs(d - 2.0) <= tol.eps_geom) {
    out.kind = SphereIntersection::Kind::Tangent;
    out.point = 0.5 * (c1 + c2);
    return out;
  }
  if (d > 2.0) return out;
  out.kind = SphereIntersection::Kind::Circle;
  out.circle = Circle3::make(0.5 * (c1 + c2), std::sqrt(1.0 - d * d / 4.0), axis / d);
  return out;
}

Point3 circumcenter(const Point3& a, const Point3& b, const Point3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 n = ab.cross(ac);
  const double n2 = n.squaredNorm();
  if (n2 == 0.0) throw GeometryError("collinear points have no circumcenter");
  return a + (ac.squaredNorm() * n.cross(ab) + ab.squaredNorm() * ac.cross(n)) / (2.0 * n2);
}

double circumradius(const Point3& a, const Point3& b, const Point3& c) {
  return (circumcenter(a, b, c) - a).norm();
}

TriplePoints triple_sphere_points(const Point3& c1, const Point3& c2, const Point3& c3,
                                  const Tolerance& tol) {
  const Vec3 n = (c2 - c1).cross(c3 - c1);
  const double scale = std::max({(c2 - c1).norm(), (c3 - c1).norm(), (c3 - c2).norm(), 1e-300});
  if (n.norm() <= tol.eps_geom * scale) throw GeometryError("collinear sphere centers");
  const Point3 m = circumcenter(c1, c2, c3);
  const double r2 = (m - c1).squaredNorm();
  TriplePoints out;
  const double h2 = 1.0 - r2;
  if (h2 < -tol.eps_geom) return out;
  const Vec3 unit = n.normalized();
  if (h2 <= tol.eps_geom) {
    out.kind = TriplePoints::Kind::Double;
    out.q = out.qbar = m;
    return out;
  }
  const double h = std::sqrt(h2);
  out.kind = TriplePoints::Kind::Pair;
  out.q = m + h * unit;
  out.qbar = m - h * unit;
  return out;
}

bool AngleInterval::contains(double t, double slack) const {
  if (full()) return true;
  const double rel = canonical_angle(t - start);
  return rel <= span + slack || rel >= kTwoPi - slack;
}

IntervalSet full_circle() { return {AngleInterval{0.0, kTwoPi}}; }

namespace {

// Splits an interval into pieces lying inside [0, 2pi).
void unwrap(const AngleInterval& a, std::vector<std::pair<double, double>>& out) {
  if (a.full()) {
    out.emplace_back(0.0, kTwoPi);
    return;
  }
  const double s = canonical_angle(a.start);
  const double e = s + a.span;
  if (e <= kTwoPi) {
    out.emplace_back(s, e);
  } else {
    out.emplace_back(s, kTwoPi);
    out.emplace_back(0.0, e - kTwoPi);
  }
}

}  // namespace

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  if (a.size() == 1 && a[0].full()) return b;
  if (b.size() == 1 && b[0].full()) return a;
  std::vector<std::pair<double, double>> pa, pb, cut;
  for (const auto& i : a) unwrap(i, pa);
  for (const auto& i : b) unwrap(i, pb);
  for (const auto& x : pa)
    for (const auto& y : pb) {
      const double lo = std::max(x.first, y.first);
      const double hi = std::min(x.second, y.second);
      if (hi >= lo) cut.emplace_back(lo, hi);
    }
  std::sort(cut.begin(), cut.end());
  // Merge touching pieces, including the seam at 0 / 2pi.
  std::vector<std::pair<double, double>> merged;
  for (const auto& c : cut) {
    if (!merged.empty() && c.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, c.second);
    else
      merged.push_back(c);
  }
  if (merged.size() == 1 && merged[0].first <= 0.0 && merged[0].second >= kTwoPi)
    return full_circle();
  if (merged.size() >= 2 && merged.front().first <= 0.0 && merged.back().second >= kTwoPi) {
    merged.back().second += merged.front().second;
    merged.erase(merged.begin());
  }
  IntervalSet out;
  for (const auto& m : merged) out.push_back({m.first, m.second - m.first});
  return out;
}

IntervalSet circle_ball_clip(const Circle3& c, const Point3& x) {
  // |c + r e(t) - x|^2 <= 1  <=>  A cos t + B sin t <= C
  const Vec3 d = c.center - x;
  const double a = 2.0 * c.radius * d.dot(c.u);
  const double b = 2.0 * c.radius * d.dot(c.w);
  const double rhs = 1.0 - d.squaredNorm() - c.radius * c.radius;
  const double amp = std::hypot(a, b);
  if (rhs >= amp) return full_circle();
  if (rhs < -amp) return {};
  const double phi = std::atan2(b, a);
  const double alpha = std::atan2(std::sqrt((amp - rhs) * (amp + rhs)), rhs);
  return {AngleInterval{canonical_angle(phi + alpha), kTwoPi - 2.0 * alpha}};
}

namespace {

EnclosingBall ball_from(const std::vector<Point3>& r) {
  switch (r.size()) {
    case 0:
      return {Point3::Zero(), -1.0};
    case 1:
      return {r[0], 0.0};
    case 2:
      return {0.5 * (r[0] + r[1]), 0.5 * (r[0] - r[1]).norm()};
    case 3: {
      const Vec3 n = (r[1] - r[0]).cross(r[2] - r[0]);
      if (n.squaredNorm() < 1e-300) {
        EnclosingBall best{Point3::Zero(), -1.0};
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            EnclosingBall b = ball_from({r[i], r[j]});
            if (b.radius > best.radius) best = b;
          }
        return best;
      }
      const Point3 m = circumcenter(r[0], r[1], r[2]);
      return {m, (m - r[0]).norm()};
    }
    default: {
      Eigen::Matrix3d a;
      Eigen::Vector3d rhs;
      for (int i = 0; i < 3; ++i) {
        a.row(i) = (r[i + 1] - r[0]).transpose();
        rhs(i) = 0.5 * ((r[i + 1] - r[0]).squaredNorm());
      }
      const Eigen::Vector3d off = a.colPivHouseholderQr().solve(rhs);
      const Point3 m = r[0] + off;
      return {m, off.norm()};
    }
  }
}

bool inside(const EnclosingBall& b, const Point3& p) {
  return b.radius >= 0.0 && (p - b.center).norm() <= b.radius * (1.0 + 1e-12) + 1e-15;
}

EnclosingBall welzl(std::vector<Point3>& pts, std::size_t n, std::vector<Point3> boundary) {
  if (n == 0 || boundary.size() == 4) return ball_from(boundary);
  const Point3 p = pts[n - 1];
  EnclosingBall b = welzl(pts, n - 1, boundary);
  if (inside(b, p)) return b;
  boundary.push_back(p);
  return welzl(pts, n - 1, boundary);
}

}  // namespace

EnclosingBall minimum_enclosing_ball(const std::vector<Point3>& points) {
  if (points.empty()) throw GeometryError("enclosing ball of no points");
  std::vector<Point3> pts = points;
  std::mt19937 rng(0x5eed);
  std::shuffle(pts.begin(), pts.end(), rng);
  return welzl(pts, pts.size(), {});
}

}  // namespace ballsteinitz
