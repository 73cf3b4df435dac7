#include "cmm/spline.hpp"

#include <cmath>

#include "cmm/error.hpp"
#include "cmm/parallel.hpp"

namespace cmm {

namespace {

std::array<double, 3> de_casteljau_first(const std::array<double, 6>& c, const std::array<double, 3>& b) {
  return {b[0] * c[0] + b[1] * c[3] + b[2] * c[4], b[0] * c[3] + b[1] * c[1] + b[2] * c[5],
          b[0] * c[4] + b[1] * c[5] + b[2] * c[2]};
}

// Coefficient next to v on the sub-edge [v, w] from the derivative of f at v
// along the great circle towards w.
double edge_coefficient(const Vec3& v, const Vec3& w, double fv, const HermiteSample& s, const TangentFrame& fr) {
  const Vec3 e = UnitVec3::project(w - dot(v, w) * v);
  const double c = dot(v, w);
  const double aw = dot(e, w) / (1 - c * c);
  const double av = -c * aw;
  const double de = s.d1 * dot(e, fr.g1) + s.d2 * dot(e, fr.g2);
  return (0.5 * de - av * fv) / aw;
}

}  // namespace

PSScalarSpline::PSScalarSpline(std::shared_ptr<const PowellSabinGeometry> geometry,
                               std::vector<Coefficients> coefficients)
    : geometry_(std::move(geometry)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != geometry_->num_triangles())
    throw Error(ErrorKind::InvalidArgument, "one coefficient block per macro-triangle required");
}

PSScalarSpline PSScalarSpline::build_from_hermite(std::shared_ptr<const PowellSabinGeometry> geometry,
                                                  const HermiteData& data) {
  const auto& g = *geometry;
  const auto& mesh = g.mesh();
  if (data.size() != mesh.num_vertices())
    throw Error(ErrorKind::InvalidArgument, "Hermite data must have one sample per vertex");
  for (const auto& s : data)
    if (!std::isfinite(s.f) || !std::isfinite(s.d1) || !std::isfinite(s.d2))
      throw Error(ErrorKind::InvalidArgument, "non-finite Hermite data");

  std::vector<Coefficients> coeffs(g.num_triangles());
  parallel_for(coeffs.size(), [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    const auto& corner = mesh.triangle(t);
    const auto& pts = g.points(t);
    auto& c = coeffs[ti];
    std::array<const HermiteSample*, 3> s;
    for (int i = 0; i < 3; ++i) {
      s[i] = &data[corner[i]];
      c[i] = s[i]->f;
    }
    auto edge = [&](int i, int w) {
      return edge_coefficient(pts[i], pts[w], c[i], *s[i], mesh.frame(corner[i]));
    };
    c[3] = edge(0, 3);
    c[4] = edge(0, 6);
    c[5] = edge(0, 5);
    c[6] = edge(1, 4);
    c[7] = edge(1, 6);
    c[8] = edge(1, 3);
    c[9] = edge(2, 5);
    c[10] = edge(2, 6);
    c[11] = edge(2, 4);
    const auto [r1, s1] = g.edge_weights(t, 0);
    const auto [r2, s2] = g.edge_weights(t, 1);
    const auto [r3, s3] = g.edge_weights(t, 2);
    c[12] = r1 * c[3] + s1 * c[8];
    c[13] = r2 * c[6] + s2 * c[11];
    c[14] = r3 * c[9] + s3 * c[5];
    c[15] = r1 * c[4] + s1 * c[7];
    c[16] = r2 * c[7] + s2 * c[10];
    c[17] = r3 * c[10] + s3 * c[4];
    const auto& a = g.barycenter_weights(t);
    c[18] = a[0] * c[4] + a[1] * c[7] + a[2] * c[10];
  });
  return PSScalarSpline(std::move(geometry), std::move(coeffs));
}

std::array<double, 6> PSScalarSpline::sub_coefficients(int macro, int sub) const {
  const auto& c = coefficients_[macro];
  const auto& idx = kSubLayout[sub];
  return {c[idx[0]], c[idx[1]], c[idx[2]], c[idx[3]], c[idx[4]], c[idx[5]]};
}

double PSScalarSpline::eval(const Location& loc) const {
  const auto& b = loc.bary;
  const auto d = de_casteljau_first(sub_coefficients(loc.macro, loc.sub), b);
  return b[0] * d[0] + b[1] * d[1] + b[2] * d[2];
}

double PSScalarSpline::eval_bernstein(const Location& loc) const {
  const auto c = sub_coefficients(loc.macro, loc.sub);
  const auto& b = loc.bary;
  return c[0] * b[0] * b[0] + c[1] * b[1] * b[1] + c[2] * b[2] * b[2] + 2 * c[3] * b[0] * b[1] +
         2 * c[4] * b[0] * b[2] + 2 * c[5] * b[1] * b[2];
}

double PSScalarSpline::derivative_bary(const Location& loc, const std::array<double, 3>& bg) const {
  const auto d = de_casteljau_first(sub_coefficients(loc.macro, loc.sub), loc.bary);
  return 2 * (bg[0] * d[0] + bg[1] * d[1] + bg[2] * d[2]);
}

double PSScalarSpline::directional_derivative(const Location& loc, const Vec3& g) const {
  require_tangent(location_point(*geometry_, loc), g);
  return derivative_bary(loc, direction_bary(*geometry_, loc, g));
}

Vec3 location_point(const PowellSabinGeometry& geometry, const Location& loc) {
  const auto& pts = geometry.points(loc.macro);
  const auto& s = PowellSabinGeometry::kSubTriangles[loc.sub];
  return loc.bary[0] * pts[s[0]].vec() + loc.bary[1] * pts[s[1]].vec() + loc.bary[2] * pts[s[2]].vec();
}

std::array<double, 3> direction_bary(const PowellSabinGeometry& geometry, const Location& loc, const Vec3& g) {
  const auto rows = geometry.sub_inverse(loc.macro, loc.sub);
  return {dot(rows[0], g), dot(rows[1], g), dot(rows[2], g)};
}

void require_tangent(const Vec3& p, const Vec3& g) {
  if (std::abs(dot(g, p)) > 1e-8 * norm(g))
    throw Error(ErrorKind::NonTangentDirection, "direction is not tangent at the evaluation point");
}

}  // namespace cmm
