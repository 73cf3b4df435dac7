#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include "cmm/spline.hpp"

namespace cmm {

/// A C1 map of the sphere: one PS spline per Cartesian component followed
/// by radial projection.
class SphereMapSpline {
 public:
  explicit SphereMapSpline(std::array<PSScalarSpline, 3> components);

  const PSScalarSpline& component(int i) const { return components_[i]; }
  const PowellSabinGeometry& geometry() const { return components_[0].geometry(); }
  const std::shared_ptr<const PowellSabinGeometry>& geometry_ptr() const { return components_[0].geometry_ptr(); }

  /// Component values before projection.
  Vec3 eval_raw(const Location& loc) const;
  Vec3 eval_raw(const UnitVec3& p) const { return eval_raw(geometry().locate(p)); }

  /// Throws ZeroVector if the pre-projection norm drops below 1e-6.
  UnitVec3 eval(const UnitVec3& p) const;

  /// Image point and the pushed-forward tangent vector v.
  std::pair<UnitVec3, Vec3> eval_with_differential(const UnitVec3& p, const Vec3& v) const;

  /// Image point and the determinant of the differential in orthonormal
  /// frames at p and at the image.
  std::pair<UnitVec3, double> eval_with_jacobian(const UnitVec3& p) const;

 private:
  std::array<PSScalarSpline, 3> components_;
};

/// Builds the map from per-component Hermite data. Vertex values must be
/// near the sphere (norm in [0.5, 1.5]).
SphereMapSpline interp_map(std::shared_ptr<const PowellSabinGeometry> geometry,
                           const std::array<HermiteData, 3>& samples);

/// Interpolated identity map.
SphereMapSpline identity_map(std::shared_ptr<const PowellSabinGeometry> geometry);

UnitVec3 eval_map(const SphereMapSpline& m, const UnitVec3& p);
/// Throws NonTangentDirection if v is not tangent at p.
Vec3 eval_differential(const SphereMapSpline& m, const UnitVec3& p, const Vec3& v);
double jacobian_determinant(const SphereMapSpline& m, const UnitVec3& p);

/// Ordered composition of submaps. submaps()[0] is the oldest; the total map
/// is submaps[0] o submaps[1] o ... o submaps[n-1], so evaluation applies the
/// newest submap first. The empty chain is the identity.
class MapChain {
 public:
  MapChain() = default;

  void push(SphereMapSpline map, double time);
  bool empty() const { return submaps_.empty(); }
  std::size_t size() const { return submaps_.size(); }
  const std::vector<SphereMapSpline>& submaps() const { return submaps_; }
  /// End time of each submap's window.
  const std::vector<double>& times() const { return times_; }

  UnitVec3 eval(const UnitVec3& p) const;
  std::pair<UnitVec3, Vec3> eval_with_differential(const UnitVec3& p, const Vec3& v) const;
  /// Image point and, by the chain rule, the product of the submap
  /// determinants along the trajectory.
  std::pair<UnitVec3, double> eval_with_jacobian(const UnitVec3& p) const;

 private:
  std::vector<SphereMapSpline> submaps_;
  std::vector<double> times_;
};

UnitVec3 eval_chain(const MapChain& c, const UnitVec3& p);
double jacobian_determinant(const MapChain& c, const UnitVec3& p);

/// Text serialization. Header "# cmm-chain <level> <count>", then per submap
/// "submap <time> <triangles>" and one line of 57 coefficients (x, y, z
/// blocks of 19) per macro-triangle. Only icosahedral meshes are supported.
void write_chain(std::ostream& os, const MapChain& chain);
/// Reads a chain; the mesh is rebuilt from the stored level.
MapChain read_chain(std::istream& is);

}  // namespace cmm
