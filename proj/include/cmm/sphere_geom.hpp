#pragma once

#include <utility>

#include "cmm/vec3.hpp"

namespace cmm {

/// A point on the unit sphere. The only ways to obtain one are radial
/// projection or the explicitly unchecked factory, so holders may rely on
/// |v| = 1 to rounding.
class UnitVec3 {
 public:
  UnitVec3() : v_{0, 0, 1} {}

  /// Radial projection v / |v|. Throws ZeroVector for |v| < 1e-300.
  static UnitVec3 project(const Vec3& v);

  /// Wraps a vector the caller guarantees is already unit length.
  static constexpr UnitVec3 from_unit(const Vec3& v) { return UnitVec3(v); }

  constexpr const Vec3& vec() const { return v_; }
  constexpr operator const Vec3&() const { return v_; }
  constexpr double x() const { return v_.x; }
  constexpr double y() const { return v_.y; }
  constexpr double z() const { return v_.z; }
  constexpr double operator[](int i) const { return v_[i]; }

  UnitVec3 operator-() const { return UnitVec3(-v_); }
  friend constexpr bool operator==(const UnitVec3&, const UnitVec3&) = default;

 private:
  explicit constexpr UnitVec3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

/// Orthonormal tangent basis at `base` with g1 x g2 = base.
struct TangentFrame {
  UnitVec3 base;
  Vec3 g1, g2;
};

/// Longitude lambda in [0, 2pi), colatitude theta in [0, pi].
struct SphCoord {
  double lambda = 0;
  double theta = 0;
};

UnitVec3 radial_project(const Vec3& v);

/// Differential of the radial projection at xi applied to v:
/// (v - <xi,v>/|xi|^2 xi) / |xi|.
Vec3 project_differential(const Vec3& xi, const Vec3& v);

/// Deterministic frame at p: g1 is the tangential part of e3 (e1 within 1e-12
/// of the poles), g2 = p x g1.
TangentFrame tangent_frame(const UnitVec3& p);

/// (<q,g1>, <q,g2>); throws OutOfChart unless q is in the open hemisphere
/// around the frame base.
std::pair<double, double> tangent_coords(const TangentFrame& frame, const UnitVec3& q);

/// radial_project(base + s1 g1 + s2 g2).
UnitVec3 stencil_point(const TangentFrame& frame, double s1, double s2);

/// Arc length between two points, via atan2(|p x q|, p.q).
double great_circle_distance(const Vec3& p, const Vec3& q);

UnitVec3 sph_to_cart(const SphCoord& c);
/// Inverse chart; at the poles longitude is reported as 0.
SphCoord cart_to_sph(const Vec3& p);

/// Rodrigues rotation of p about the unit axis.
UnitVec3 rotate_about_axis(const UnitVec3& axis, double angle, const UnitVec3& p);

/// Area of the spherical triangle (l'Huilier).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace cmm
