#pragma once

#include <array>
#include <memory>
#include <vector>

#include "cmm/triangulation.hpp"

namespace cmm {

/// Value and surface gradient (components in the vertex frame g1, g2) of a
/// scalar field at one vertex.
struct HermiteSample {
  double f = 0;
  double d1 = 0;
  double d2 = 0;
};

/// One sample per mesh vertex.
using HermiteData = std::vector<HermiteSample>;

/// Quadratic C1 spherical spline on the Powell-Sabin split.
///
/// Coefficient layout per macro-triangle (0-based, c[i] is c_{i+1}):
///   c1..c3    vertex values at v1, v2, v3
///   c4 v1->v12   c5 v1->v4   c6 v1->v13
///   c7 v2->v23   c8 v2->v4   c9 v2->v12
///   c10 v3->v13  c11 v3->v4  c12 v3->v23
///   c13 v12  c14 v23  c15 v13
///   c16 between v12,v4  c17 between v23,v4  c18 between v13,v4
///   c19 v4
/// "a->b" is the coefficient on sub-edge [a, b] next to a.
class PSScalarSpline {
 public:
  static constexpr int kCoefficients = 19;
  using Coefficients = std::array<double, kCoefficients>;

  /// Per sub-triangle (c200, c020, c002, c110, c101, c011) as indices into
  /// the 19 macro coefficients, in the sub-triangle's vertex order.
  static constexpr std::array<std::array<int, 6>, 6> kSubLayout{{
      {0, 12, 18, 3, 4, 15},
      {1, 18, 12, 7, 8, 15},
      {18, 1, 13, 7, 16, 6},
      {13, 18, 2, 16, 11, 10},
      {14, 18, 2, 17, 9, 10},
      {18, 14, 0, 17, 4, 5},
  }};

  PSScalarSpline(std::shared_ptr<const PowellSabinGeometry> geometry, std::vector<Coefficients> coefficients);

  /// Hermite interpolant of vertex values and gradients. Throws
  /// InvalidArgument for a size mismatch or non-finite data.
  static PSScalarSpline build_from_hermite(std::shared_ptr<const PowellSabinGeometry> geometry,
                                           const HermiteData& data);

  const PowellSabinGeometry& geometry() const { return *geometry_; }
  const std::shared_ptr<const PowellSabinGeometry>& geometry_ptr() const { return geometry_; }
  const Coefficients& coefficients(int macro) const { return coefficients_[macro]; }
  const std::vector<Coefficients>& all_coefficients() const { return coefficients_; }

  /// (c200, c020, c002, c110, c101, c011) of one sub-triangle.
  std::array<double, 6> sub_coefficients(int macro, int sub) const;

  /// de Casteljau evaluation of the sub-triangle polynomial.
  double eval(const Location& loc) const;
  double eval(const UnitVec3& p) const { return eval(geometry_->locate(p)); }
  /// Direct Bernstein sum; same value as eval up to rounding.
  double eval_bernstein(const Location& loc) const;

  /// Derivative along g, given as barycentric coordinates bg of g in the
  /// sub-triangle of loc (bg = sub_inverse rows . g).
  double derivative_bary(const Location& loc, const std::array<double, 3>& bg) const;

  /// Derivative along a tangent vector g at the located point. Throws
  /// NonTangentDirection when |g.p| > 1e-8 |g|.
  double directional_derivative(const Location& loc, const Vec3& g) const;

 private:
  std::shared_ptr<const PowellSabinGeometry> geometry_;
  std::vector<Coefficients> coefficients_;
};

/// Point of the sphere described by a Location.
Vec3 location_point(const PowellSabinGeometry& geometry, const Location& loc);

/// Barycentric coordinates of a direction g in the sub-triangle of loc.
std::array<double, 3> direction_bary(const PowellSabinGeometry& geometry, const Location& loc, const Vec3& g);

/// Throws NonTangentDirection unless g is tangent at p (|g.p| <= 1e-8 |g|).
void require_tangent(const Vec3& p, const Vec3& g);

}  // namespace cmm
