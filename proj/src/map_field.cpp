#include "cmm/map_field.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cmm/error.hpp"

namespace cmm {

namespace {

UnitVec3 project_checked(const Vec3& raw) {
  if (!(norm(raw) >= 1e-6)) throw Error(ErrorKind::ZeroVector, "map value collapsed towards the origin");
  return UnitVec3::project(raw);
}

double frame_determinant(const UnitVec3& image, const Vec3& dg1, const Vec3& dg2) {
  const auto fi = tangent_frame(image);
  return dot(fi.g1, dg1) * dot(fi.g2, dg2) - dot(fi.g2, dg1) * dot(fi.g1, dg2);
}

}  // namespace

SphereMapSpline::SphereMapSpline(std::array<PSScalarSpline, 3> components) : components_(std::move(components)) {
  if (components_[1].geometry_ptr() != components_[0].geometry_ptr() ||
      components_[2].geometry_ptr() != components_[0].geometry_ptr())
    throw Error(ErrorKind::InvalidArgument, "map components must share one geometry");
}

Vec3 SphereMapSpline::eval_raw(const Location& loc) const {
  return {components_[0].eval(loc), components_[1].eval(loc), components_[2].eval(loc)};
}

UnitVec3 SphereMapSpline::eval(const UnitVec3& p) const { return project_checked(eval_raw(p)); }

std::pair<UnitVec3, Vec3> SphereMapSpline::eval_with_differential(const UnitVec3& p, const Vec3& v) const {
  require_tangent(p, v);
  const auto loc = geometry().locate(p);
  const Vec3 raw = eval_raw(loc);
  const auto bg = direction_bary(geometry(), loc, v);
  const Vec3 jv{components_[0].derivative_bary(loc, bg), components_[1].derivative_bary(loc, bg),
                components_[2].derivative_bary(loc, bg)};
  return {project_checked(raw), project_differential(raw, jv)};
}

std::pair<UnitVec3, double> SphereMapSpline::eval_with_jacobian(const UnitVec3& p) const {
  const auto loc = geometry().locate(p);
  const Vec3 raw = eval_raw(loc);
  const UnitVec3 image = project_checked(raw);
  const auto fp = tangent_frame(p);
  auto push = [&](const Vec3& g) {
    const auto bg = direction_bary(geometry(), loc, g);
    const Vec3 jv{components_[0].derivative_bary(loc, bg), components_[1].derivative_bary(loc, bg),
                  components_[2].derivative_bary(loc, bg)};
    return project_differential(raw, jv);
  };
  return {image, frame_determinant(image, push(fp.g1), push(fp.g2))};
}

SphereMapSpline interp_map(std::shared_ptr<const PowellSabinGeometry> geometry,
                           const std::array<HermiteData, 3>& samples) {
  const std::size_t n = geometry->mesh().num_vertices();
  for (const auto& s : samples)
    if (s.size() != n) throw Error(ErrorKind::InvalidArgument, "map samples must have one entry per vertex");
  for (std::size_t v = 0; v < n; ++v) {
    const double r = std::sqrt(samples[0][v].f * samples[0][v].f + samples[1][v].f * samples[1][v].f +
                               samples[2][v].f * samples[2][v].f);
    if (!(r >= 0.5 && r <= 1.5)) throw Error(ErrorKind::InvalidArgument, "map vertex value is far from the sphere");
  }
  return SphereMapSpline({PSScalarSpline::build_from_hermite(geometry, samples[0]),
                          PSScalarSpline::build_from_hermite(geometry, samples[1]),
                          PSScalarSpline::build_from_hermite(geometry, samples[2])});
}

SphereMapSpline identity_map(std::shared_ptr<const PowellSabinGeometry> geometry) {
  const auto& mesh = geometry->mesh();
  std::array<HermiteData, 3> samples;
  const Vec3 axes[3] = {kE1, kE2, kE3};
  for (int i = 0; i < 3; ++i) {
    samples[i].resize(mesh.num_vertices());
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
      const auto& fr = mesh.frame(static_cast<int>(v));
      samples[i][v] = {fr.base[i], dot(axes[i], fr.g1), dot(axes[i], fr.g2)};
    }
  }
  return interp_map(std::move(geometry), samples);
}

UnitVec3 eval_map(const SphereMapSpline& m, const UnitVec3& p) { return m.eval(p); }

Vec3 eval_differential(const SphereMapSpline& m, const UnitVec3& p, const Vec3& v) {
  return m.eval_with_differential(p, v).second;
}

double jacobian_determinant(const SphereMapSpline& m, const UnitVec3& p) { return m.eval_with_jacobian(p).second; }

void MapChain::push(SphereMapSpline map, double time) {
  if (!submaps_.empty() && map.geometry().num_triangles() != submaps_.front().geometry().num_triangles())
    throw Error(ErrorKind::InvalidArgument, "submaps of one chain must live on the same mesh");
  submaps_.push_back(std::move(map));
  times_.push_back(time);
}

UnitVec3 MapChain::eval(const UnitVec3& p) const {
  UnitVec3 q = p;
  for (auto it = submaps_.rbegin(); it != submaps_.rend(); ++it) q = it->eval(q);
  return q;
}

std::pair<UnitVec3, Vec3> MapChain::eval_with_differential(const UnitVec3& p, const Vec3& v) const {
  std::pair<UnitVec3, Vec3> cur{p, v};
  for (auto it = submaps_.rbegin(); it != submaps_.rend(); ++it) {
    // drop the rounding-level normal component picked up by the previous projection
    const Vec3 w = cur.second - dot(cur.second, cur.first.vec()) * cur.first.vec();
    cur = it->eval_with_differential(cur.first, w);
  }
  return cur;
}

std::pair<UnitVec3, double> MapChain::eval_with_jacobian(const UnitVec3& p) const {
  UnitVec3 q = p;
  double j = 1;
  for (auto it = submaps_.rbegin(); it != submaps_.rend(); ++it) {
    const auto [next, d] = it->eval_with_jacobian(q);
    j *= d;
    q = next;
  }
  return {q, j};
}

UnitVec3 eval_chain(const MapChain& c, const UnitVec3& p) { return c.eval(p); }
double jacobian_determinant(const MapChain& c, const UnitVec3& p) { return c.eval_with_jacobian(p).second; }

void write_chain(std::ostream& os, const MapChain& chain) {
  const int level = chain.empty() ? -1 : chain.submaps().front().geometry().mesh().level();
  if (!chain.empty() && level < 0)
    throw Error(ErrorKind::Io, "only chains on icosahedral meshes can be serialized");
  os << "# cmm-chain " << level << ' ' << chain.size() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& m = chain.submaps()[i];
    std::snprintf(buf, sizeof buf, "%.17g", chain.times()[i]);
    os << "submap " << buf << ' ' << m.geometry().num_triangles() << '\n';
    for (std::size_t t = 0; t < m.geometry().num_triangles(); ++t) {
      const char* sep = "";
      for (int c = 0; c < 3; ++c)
        for (double v : m.component(c).coefficients(static_cast<int>(t))) {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          os << sep << buf;
          sep = " ";
        }
      os << '\n';
    }
  }
}

MapChain read_chain(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "empty chain stream");
  std::istringstream head(line);
  std::string hash, tag;
  int level = 0;
  std::size_t count = 0;
  if (!(head >> hash >> tag >> level >> count) || hash != "#" || tag != "cmm-chain")
    throw Error(ErrorKind::Io, "missing '# cmm-chain level count' header");
  MapChain chain;
  if (count == 0) return chain;
  if (level < 0 || level > SphericalTriangulation::kMaxLevel) throw Error(ErrorKind::Io, "bad mesh level in chain header");
  const auto geometry = std::make_shared<const PowellSabinGeometry>(
      std::make_shared<const SphericalTriangulation>(SphericalTriangulation::icosahedral(level)));
  const std::size_t nt = geometry->num_triangles();
  for (std::size_t i = 0; i < count; ++i) {
    std::string word;
    double time = 0;
    std::size_t n = 0;
    if (!(is >> word >> time >> n) || word != "submap" || n != nt)
      throw Error(ErrorKind::Io, "bad submap header " + std::to_string(i));
    std::array<std::vector<PSScalarSpline::Coefficients>, 3> blocks;
    for (auto& b : blocks) b.resize(nt);
    for (std::size_t t = 0; t < nt; ++t)
      for (auto& b : blocks)
        for (double& v : b[t])
          if (!(is >> v)) throw Error(ErrorKind::Io, "truncated coefficients in submap " + std::to_string(i));
    chain.push(SphereMapSpline({PSScalarSpline(geometry, std::move(blocks[0])),
                                PSScalarSpline(geometry, std::move(blocks[1])),
                                PSScalarSpline(geometry, std::move(blocks[2]))}),
               time);
  }
  return chain;
}

}  // namespace cmm
