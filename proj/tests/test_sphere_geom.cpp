#include <cmath>
#include <numbers>

#include "cmm/error.hpp"
#include "cmm/sphere_geom.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmm;
using cmm::testing::random_unit;
using cmm::testing::random_units;
using std::numbers::pi;

TEST_CASE("radial projection") {
  CHECK(radial_project({2, 0, 0}).vec() == Vec3{1, 0, 0});
  const auto p = radial_project({1, 1, 1});
  CHECK(p.x() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  const auto q = radial_project({0.3, -0.4, 0.0});
  CHECK(q.x() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(q.y() == doctest::Approx(-0.8).epsilon(1e-15));
  CHECK_THROWS_AS(radial_project({0, 0, 0}), Error);
  try {
    radial_project({1e-301, 0, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
  for (const auto& u : random_units(1000, 7)) CHECK(std::abs(norm(u) - 1) < 1e-14);
}

TEST_CASE("projection differential") {
  CHECK(project_differential({1, 0, 0}, {0, 1, 0}) == Vec3{0, 1, 0});
  CHECK(project_differential({1, 0, 0}, {1, 0, 0}) == Vec3{0, 0, 0});
  CHECK(project_differential({2, 0, 0}, {0, 1, 0}) == Vec3{0, 0.5, 0});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 xi = 1.7 * random_unit(rng).vec();
    const Vec3 v = random_unit(rng);
    CHECK(std::abs(dot(project_differential(xi, v), xi)) < 1e-13);
    // at unit norm it is the orthogonal tangent projector
    const Vec3 x = random_unit(rng);
    const Vec3 once = project_differential(x, v);
    const Vec3 twice = project_differential(x, once);
    CHECK(norm(once - twice) < 1e-15);
  }
}

TEST_CASE("tangent frames are right-handed and orthonormal") {
  auto check = [](const UnitVec3& p) {
    const auto f = tangent_frame(p);
    CHECK(std::abs(norm(f.g1) - 1) < 1e-13);
    CHECK(std::abs(norm(f.g2) - 1) < 1e-13);
    CHECK(std::abs(dot(f.g1, f.g2)) < 1e-13);
    CHECK(std::abs(dot(f.g1, p)) < 1e-13);
    CHECK(std::abs(dot(f.g2, p)) < 1e-13);
    CHECK(norm(cross(f.g1, f.g2) - p.vec()) < 1e-13);
  };
  for (const auto& p : random_units(1000, 11)) check(p);
  check(UnitVec3::from_unit(kE3));
  check(UnitVec3::from_unit(-kE3));
  check(UnitVec3::project({1e-13, 0, 1}));
}

TEST_CASE("tangent coordinates") {
  const TangentFrame f{UnitVec3::from_unit(kE3), kE1, kE2};
  const auto [a, b] = tangent_coords(f, f.base);
  CHECK(a == 0);
  CHECK(b == 0);
  const auto q = UnitVec3::project({std::sin(0.1), 0, std::cos(0.1)});
  const auto [c, d] = tangent_coords(f, q);
  CHECK(c == doctest::Approx(std::sin(0.1)).epsilon(1e-15));
  CHECK(d == 0);
  CHECK_THROWS_AS(tangent_coords(f, UnitVec3::project({0.1, 0, -1})), Error);
  CHECK_THROWS_AS(tangent_coords(f, UnitVec3::from_unit(kE1)), Error);
}

TEST_CASE("stencil points") {
  const TangentFrame f{UnitVec3::from_unit(kE3), kE1, kE2};
  CHECK(stencil_point(f, 0, 0) == f.base);
  const double eps = 1e-5;
  CHECK(norm(stencil_point(f, eps, eps) - UnitVec3::project({eps, eps, 1}).vec()) == 0);
  // arc length to base = sqrt(s1^2 + s2^2) - r^3/3 + O(r^5)
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (const auto& p : random_units(200, 13)) {
    const auto fr = tangent_frame(p);
    const double s1 = u(rng), s2 = u(rng);
    const double r = std::hypot(s1, s2);
    const double arc = great_circle_distance(stencil_point(fr, s1, s2), p);
    CHECK(std::abs(arc - std::atan(r)) < 1e-14);
    CHECK(std::abs(arc - r) <= r * r * r / 3 + 1e-15);
  }
}

TEST_CASE("great circle distance") {
  CHECK(great_circle_distance(kE1, kE2) == doctest::Approx(pi / 2).epsilon(1e-15));
  const auto ps = random_units(300, 17);
  for (std::size_t i = 0; i + 2 < ps.size(); i += 3) {
    CHECK(great_circle_distance(ps[i], ps[i]) == 0);
    CHECK(great_circle_distance(ps[i], -ps[i]) == doctest::Approx(pi).epsilon(1e-15));
    const double ab = great_circle_distance(ps[i], ps[i + 1]);
    const double bc = great_circle_distance(ps[i + 1], ps[i + 2]);
    const double ac = great_circle_distance(ps[i], ps[i + 2]);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab >= 0);
    CHECK(ab <= pi);
  }
}

TEST_CASE("spherical coordinates round trip") {
  CHECK(norm(sph_to_cart({0, pi / 2}).vec() - kE1) < 1e-16);
  CHECK(norm(sph_to_cart({pi / 2, pi / 2}).vec() - kE2) < 1e-15);
  for (const auto& p : random_units(10000, 19)) {
    const auto c = cart_to_sph(p);
    CHECK(c.lambda >= 0);
    CHECK(c.lambda < 2 * pi);
    CHECK(norm(sph_to_cart(c).vec() - p.vec()) < 1e-14);
  }
  const auto pole = cart_to_sph(kE3);
  CHECK(pole.lambda == 0);
  CHECK(pole.theta == 0);
}

TEST_CASE("axis rotations") {
  const auto e3 = UnitVec3::from_unit(kE3);
  CHECK(norm(rotate_about_axis(e3, pi / 2, UnitVec3::from_unit(kE1)).vec() - kE2) < 1e-15);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(-4, 4);
  for (int i = 0; i < 500; ++i) {
    const auto axis = random_unit(rng);
    const auto p = random_unit(rng);
    CHECK(norm(rotate_about_axis(axis, 0, p).vec() - p.vec()) < 1e-15);
    const double a = ang(rng), b = ang(rng);
    const auto two = rotate_about_axis(axis, b, rotate_about_axis(axis, a, p));
    const auto one = rotate_about_axis(axis, a + b, p);
    CHECK(norm(two.vec() - one.vec()) < 1e-13);
    CHECK(std::abs(norm(one) - 1) < 1e-14);
  }
}

TEST_CASE("matrix rotations agree with axis rotations") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_unit(rng);
    const double a = 0.37 * i;
    CHECK(norm(Mat3::rotation_z(a) * p.vec() - rotate_about_axis(UnitVec3::from_unit(kE3), a, p).vec()) < 1e-14);
    CHECK(norm(Mat3::rotation_x(a) * p.vec() - rotate_about_axis(UnitVec3::from_unit(kE1), a, p).vec()) < 1e-14);
    CHECK(norm(Mat3::rotation_y(a) * p.vec() - rotate_about_axis(UnitVec3::from_unit(kE2), a, p).vec()) < 1e-14);
    CHECK(std::abs(Mat3::rotation_y(a).determinant() - 1) < 1e-14);
  }
}

TEST_CASE("spherical triangle area") {
  // octant triangle has area 4pi/8
  CHECK(spherical_triangle_area(kE1, kE2, kE3) == doctest::Approx(pi / 2).epsilon(1e-14));
  const double tiny = 1e-4;
  const auto a = UnitVec3::project({1, 0, 0}), b = UnitVec3::project({1, tiny, 0}), c = UnitVec3::project({1, 0, tiny});
  CHECK(std::abs(spherical_triangle_area(a, b, c) / (0.5 * tiny * tiny) - 1) < 1e-6);
}
