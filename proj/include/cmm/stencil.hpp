#pragma once

#include <array>
#include <vector>

#include "cmm/spline.hpp"

namespace cmm {

/// Four points per vertex at tangent offsets (+e,+e), (+e,-e), (-e,+e),
/// (-e,-e) in the vertex frame, in that order.
struct VertexStencilSet {
  double epsilon = 1e-5;
  std::vector<std::array<UnitVec3, 4>> points;
};

/// Throws InvalidArgument unless 0 < epsilon <= 1e-3.
VertexStencilSet build_stencils(const SphericalTriangulation& mesh, double epsilon = 1e-5);

/// Value and frame gradient from samples at the four stencil points, ordered
/// as in VertexStencilSet.
HermiteSample reconstruct_hermite(const std::array<double, 4>& f, double epsilon);

}  // namespace cmm
