#include "cmm/stencil.hpp"

#include "cmm/error.hpp"

namespace cmm {

VertexStencilSet build_stencils(const SphericalTriangulation& mesh, double epsilon) {
  if (!(epsilon > 0 && epsilon <= 1e-3)) throw Error(ErrorKind::InvalidArgument, "stencil epsilon must be in (0, 1e-3]");
  VertexStencilSet set;
  set.epsilon = epsilon;
  set.points.resize(mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const auto& fr = mesh.frame(static_cast<int>(v));
    set.points[v] = {stencil_point(fr, epsilon, epsilon), stencil_point(fr, epsilon, -epsilon),
                     stencil_point(fr, -epsilon, epsilon), stencil_point(fr, -epsilon, -epsilon)};
  }
  return set;
}

HermiteSample reconstruct_hermite(const std::array<double, 4>& f, double epsilon) {
  const double pp = f[0], pm = f[1], mp = f[2], mm = f[3];
  return {0.25 * (pp + pm + mp + mm), (pm - mm + pp - mp) / (4 * epsilon), (mp - mm + pp - pm) / (4 * epsilon)};
}

}  // namespace cmm
