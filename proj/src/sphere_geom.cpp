#include "cmm/sphere_geom.hpp"

#include <cmath>
#include <numbers>

#include "cmm/error.hpp"

namespace cmm {

UnitVec3 UnitVec3::project(const Vec3& v) {
  const double n = norm(v);
  if (!(n >= 1e-300)) throw Error(ErrorKind::ZeroVector, "cannot project a zero vector onto the sphere");
  return UnitVec3(v / n);
}

UnitVec3 radial_project(const Vec3& v) { return UnitVec3::project(v); }

Vec3 project_differential(const Vec3& xi, const Vec3& v) {
  const double n2 = dot(xi, xi);
  const double n = std::sqrt(n2);
  if (!(n >= 1e-300)) throw Error(ErrorKind::ZeroVector, "projection differential at the origin");
  return (v - (dot(xi, v) / n2) * xi) / n;
}

TangentFrame tangent_frame(const UnitVec3& p) {
  const Vec3& b = p;
  const Vec3 axis = std::abs(b.z) > 1.0 - 1e-12 ? kE1 : kE3;
  const Vec3 g1 = UnitVec3::project(axis - dot(axis, b) * b);
  // Re-orthogonalize against rounding in the projection.
  Vec3 g2 = cross(b, g1);
  g2 = g2 / norm(g2);
  return {p, g1, g2};
}

std::pair<double, double> tangent_coords(const TangentFrame& frame, const UnitVec3& q) {
  if (!(dot(frame.base, q) > 0)) throw Error(ErrorKind::OutOfChart, "point outside the tangent chart hemisphere");
  return {dot(q, frame.g1), dot(q, frame.g2)};
}

UnitVec3 stencil_point(const TangentFrame& frame, double s1, double s2) {
  return UnitVec3::project(frame.base.vec() + s1 * frame.g1 + s2 * frame.g2);
}

double great_circle_distance(const Vec3& p, const Vec3& q) {
  return std::atan2(norm(cross(p, q)), dot(p, q));
}

UnitVec3 sph_to_cart(const SphCoord& c) {
  const double st = std::sin(c.theta);
  return UnitVec3::project({st * std::cos(c.lambda), st * std::sin(c.lambda), std::cos(c.theta)});
}

SphCoord cart_to_sph(const Vec3& p) {
  const double rxy = std::hypot(p.x, p.y);
  const double theta = std::atan2(rxy, p.z);
  if (rxy == 0) return {0.0, theta};
  double lambda = std::atan2(p.y, p.x);
  if (lambda < 0) lambda += 2 * std::numbers::pi;
  if (lambda >= 2 * std::numbers::pi) lambda = 0;
  return {lambda, theta};
}

UnitVec3 rotate_about_axis(const UnitVec3& axis, double angle, const UnitVec3& p) {
  const Vec3& k = axis;
  const Vec3& v = p;
  const double c = std::cos(angle), s = std::sin(angle);
  return UnitVec3::project(c * v + s * cross(k, v) + (dot(k, v) * (1 - c)) * k);
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double ea = great_circle_distance(b, c);
  const double eb = great_circle_distance(c, a);
  const double ec = great_circle_distance(a, b);
  const double s = 0.5 * (ea + eb + ec);
  const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - ea)) * std::tan(0.5 * (s - eb)) *
                   std::tan(0.5 * (s - ec));
  return 4 * std::atan(std::sqrt(std::max(0.0, t)));
}

}  // namespace cmm
