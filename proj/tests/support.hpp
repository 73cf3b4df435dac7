#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cmm/spline.hpp"

namespace cmm::testing {

inline UnitVec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return UnitVec3::project({n(rng), n(rng), n(rng)});
}

inline std::vector<UnitVec3> random_units(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UnitVec3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit(rng));
  return out;
}

// Unit tangent at p, from an arbitrary ambient vector.
inline Vec3 random_tangent(std::mt19937_64& rng, const Vec3& p) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 g{n(rng), n(rng), n(rng)};
  g -= dot(g, p) * p;
  return g / norm(g);
}

// Hermite samples of a smooth ambient function F with ambient gradient grad F.
inline HermiteData hermite_from(const SphericalTriangulation& mesh, const std::function<double(const Vec3&)>& f,
                                const std::function<Vec3(const Vec3&)>& grad) {
  HermiteData data(mesh.num_vertices());
  for (std::size_t v = 0; v < data.size(); ++v) {
    const auto& fr = mesh.frame(static_cast<int>(v));
    const Vec3 g = grad(fr.base);
    data[v] = {f(fr.base), dot(g, fr.g1), dot(g, fr.g2)};
  }
  return data;
}

inline std::shared_ptr<const PowellSabinGeometry> ps_geometry(int k) {
  return std::make_shared<const PowellSabinGeometry>(
      std::make_shared<const SphericalTriangulation>(SphericalTriangulation::icosahedral(k)));
}

// Least-squares slope of log e against log h.
inline double fit_slope(const std::vector<double>& h, const std::vector<double>& e) {
  const double n = static_cast<double>(h.size());
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(e[i]) / n;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    sxy += (std::log(h[i]) - mx) * (std::log(e[i]) - my);
    sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace cmm::testing
