#include <cmath>
#include <numbers>

#include "cmm/diagnostics.hpp"
#include "cmm/error.hpp"
#include "cmm/testcases.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmm;
using namespace cmm::testing;

namespace {

SphereMapSpline rotation_map(std::shared_ptr<const PowellSabinGeometry> g, const Mat3& R) {
  const auto& mesh = g->mesh();
  std::array<HermiteData, 3> s;
  for (int c = 0; c < 3; ++c) {
    const Vec3 row{R(c, 0), R(c, 1), R(c, 2)};
    s[c] = hermite_from(mesh, [row](const Vec3& p) { return dot(row, p); }, [row](const Vec3&) { return row; });
  }
  return interp_map(g, s);
}

MapChain rotation_chain(int k, const Mat3& R) {
  MapChain c;
  c.push(rotation_map(ps_geometry(k), R), 1);
  return c;
}

const auto kIdentity = [](const UnitVec3& p) { return p; };

}  // namespace

TEST_CASE("csv") {
  CHECK(csv_header() == "test,k,Nt,remaps,linf,l1,map_x,map_y,map_z,density,mass,walltime,seed");
  ErrorReport r;
  r.test = "sbr";
  r.k = 3;
  r.steps = 18;
  r.linf = 0.5;
  r.walltime = 1.25;
  const auto row = to_csv(r);
  CHECK(row.rfind("sbr,3,18,0,5.000000e-01,", 0) == 0);
  CHECK(row.substr(row.size() - 9) == ",1.250,42");
  CHECK(std::count(row.begin(), row.end(), ',') == 12);
}

TEST_CASE("sampling") {
  const auto a = sample_sphere(10000, 42);
  const auto b = sample_sphere(10000, 42);
  const auto c = sample_sphere(10000, 43);
  CHECK(a == b);
  CHECK(a != c);
  Vec3 mean{};
  for (const auto& p : a) {
    CHECK(std::abs(norm(p) - 1) <= 1e-15);
    mean += p.vec() / 10000.0;
  }
  CHECK(norm(mean) < 0.05);
  // a longer request extends the same stream
  const auto longer = sample_sphere(20000, 42);
  CHECK(std::equal(a.begin(), a.end(), longer.begin()));
}

TEST_CASE("sup error trivial cases") {
  const auto bells = cosine_bells();
  const MapChain empty;
  CHECK(linf_error(empty, bells, bells, 10000, 1) == 0);
  const auto chain = rotation_chain(2, Mat3::rotation_z(0.3));
  const ScalarField pulled = [&](const UnitVec3& p) { return bells(chain.eval(p)); };
  CHECK(linf_error(chain, bells, pulled, 10000, 1) == 0);
}

TEST_CASE("sup error of the interpolated identity decays at third order") {
  const auto phi = random_sph_harmonics(42, 8);
  std::vector<double> hs, es;
  for (int k = 3; k <= 6; ++k) {
    MapChain c;
    c.push(identity_map(ps_geometry(k)), 1);
    hs.push_back(c.submaps()[0].geometry().mesh().max_edge_length());
    es.push_back(linf_error(c, phi, phi, 20000, 3));
  }
  MESSAGE("identity tracer slope ", fit_slope(hs, es));
  CHECK(std::abs(fit_slope(hs, es) - 3) <= 0.3);
}

TEST_CASE("sup error seeds agree") {
  const auto tc = make_test_case("deform", 1.05, 1);
  CMConfig cfg;
  cfg.k = 4;
  cfg.steps = default_steps(4);
  const auto chain = run(tc.velocity, cfg);
  const double a = linf_error(chain, tc.tracer, tc.exact_tracer, 100000, 1);
  const double b = linf_error(chain, tc.tracer, tc.exact_tracer, 100000, 2);
  CHECK(std::abs(a - b) < 0.1 * std::max(a, b));
}

TEST_CASE("vertex L1 error") {
  const auto mesh = SphericalTriangulation::icosahedral(2);
  const auto bells = cosine_bells();
  const MapChain empty;
  CHECK(l1_error(empty, bells, bells, mesh) == 0);
  const ScalarField one = [](const UnitVec3&) { return 1.0; };
  const ScalarField shifted = [](const UnitVec3&) { return 1.25; };
  CHECK(l1_error(empty, shifted, one, mesh) == doctest::Approx(0.25).epsilon(1e-14));
  // |err| only at vertex 0: weight = area of its star / 3 over the sphere area
  const auto v0 = mesh.vertex(0);
  const ScalarField spike = [v0](const UnitVec3& p) { return p == v0 ? 3.0 : 1.0; };
  double star = 0, total = 0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(static_cast<int>(t));
    const double a = spherical_triangle_area(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    total += a;
    if (tri[0] == 0 || tri[1] == 0 || tri[2] == 0) star += a;
  }
  CHECK(l1_error(empty, spike, one, mesh) == doctest::Approx(2 * star / 3 / total).epsilon(1e-13));
}

TEST_CASE("map error") {
  const MapChain empty;
  for (double e : map_error(empty, kIdentity, 1000, 1)) CHECK(e == 0);
  const Mat3 R = Mat3::rotation_z(1.0);
  const auto chain = rotation_chain(3, R);
  const auto exact = [R](const UnitVec3& p) { return UnitVec3::project(R * p.vec()); };
  const auto e = map_error(chain, exact, 20000, 5);
  double arc = 0;
  for (const auto& p : sample_sphere(20000, 5)) arc = std::max(arc, great_circle_distance(chain.eval(p), exact(p)));
  for (double c : e) {
    CHECK(c > 0);
    CHECK(c <= arc);
  }
}

TEST_CASE("mass of the empty chain") {
  const MapChain empty;
  for (int N : {32, 64}) CHECK(std::abs(1 - mass_integral(empty, N)) <= 1e-12);
  CHECK_THROWS_AS(mass_integral(empty, 7), Error);
  // Gauss-Legendre convergence in N
  const double e8 = std::abs(1 - mass_integral(empty, 8));
  const double e16 = std::abs(1 - mass_integral(empty, 16));
  MESSAGE("mass errors ", e8, " ", e16);
  if (e16 > 1e-14) CHECK(std::log2(e8 / e16) >= 4);
  CHECK(e16 < e8);
}

TEST_CASE("mass of a rotation chain") {
  const auto chain = rotation_chain(3, Mat3::rotation_x(0.8));
  CHECK(std::abs(1 - mass_integral(chain, 64)) <= 1e-4);
}

TEST_CASE("density error") {
  CHECK(density_error(MapChain{}, 1000, 1) == 0);
  std::vector<double> hs, es;
  for (int k = 2; k <= 5; ++k) {
    const auto c = rotation_chain(k, Mat3::rotation_y(0.6));
    hs.push_back(c.submaps()[0].geometry().mesh().max_edge_length());
    es.push_back(density_error(c, 20000, 7));
  }
  MESSAGE("rotation density slope ", fit_slope(hs, es));
  CHECK(std::abs(fit_slope(hs, es) - 2) <= 0.3);
}

TEST_CASE("convergence slope") {
  const std::vector<double> hs{0.4, 0.2, 0.1, 0.05};
  std::vector<double> es;
  for (double h : hs) es.push_back(3 * h * h);
  CHECK(std::abs(convergence_slope(hs, es) - 2) <= 1e-10);
  CHECK_THROWS_AS(convergence_slope({0.1}, {0.01}), Error);
  CHECK_THROWS_AS(convergence_slope({0.1, 0.05}, {0.01, 1e-13}), Error);
  // pairs under the precision floor are ignored
  CHECK(std::abs(convergence_slope({0.4, 0.2, 0.1}, {0.16, 0.04, 1e-14}) - 2) <= 1e-10);
  CHECK_THROWS_AS(convergence_slope({0.4, 0.2}, {0.16}), Error);
}
