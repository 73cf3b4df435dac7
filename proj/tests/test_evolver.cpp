#include <cmath>
#include <numbers>

#include "cmm/diagnostics.hpp"
#include "cmm/error.hpp"
#include "cmm/evolver.hpp"
#include "cmm/testcases.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmm;
using namespace cmm::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Fine RK4 integration of dx/dt = u from t0 to t1 in n steps (either direction).
UnitVec3 integrate(const VelocityField& u, UnitVec3 x, double t0, double t1, int n) {
  const double h = (t1 - t0) / n;
  for (int i = 0; i < n; ++i) {
    const double t = t0 + i * h;
    const Vec3 k1 = u(x, t);
    const Vec3 k2 = u(UnitVec3::project(x.vec() + 0.5 * h * k1), t + 0.5 * h);
    const Vec3 k3 = u(UnitVec3::project(x.vec() + 0.5 * h * k2), t + 0.5 * h);
    const Vec3 k4 = u(UnitVec3::project(x.vec() + h * k3), t + h);
    x = UnitVec3::project(x.vec() + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
  }
  return x;
}

}  // namespace

TEST_CASE("config validation") {
  CMConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(default_steps(4) == 26);
  CHECK(default_steps(0) == 11);
  auto bad = [](auto edit) {
    CMConfig c;
    edit(c);
    CHECK_THROWS_AS(c.validate(), Error);
  };
  bad([](CMConfig& c) { c.steps = 0; });
  bad([](CMConfig& c) { c.T = 0; });
  bad([](CMConfig& c) { c.T = -1; });
  bad([](CMConfig& c) { c.remap_stride = -1; });
  bad([](CMConfig& c) { c.remap_stride = c.steps + 1; });
  bad([](CMConfig& c) { c.epsilon = 0; });
  bad([](CMConfig& c) { c.k = -1; });
}

TEST_CASE("rk4 backstep") {
  const auto zero = zero_velocity();
  for (const auto& p : random_units(100, 3)) CHECK(norm(rk4_backstep(zero, p, 0.5, 0.1).vec() - p.vec()) <= 1e-15);

  const auto sbr = sbr_velocity(0, 1);
  const auto e1 = UnitVec3::from_unit(kE1);
  const auto back = rk4_backstep(sbr, e1, 0.3, 0.01);
  // RK4 truncation for a rotation by phi is phi^5 / 120 (about 8e-9 here)
  const double phi = 2 * kPi * 0.01;
  CHECK(norm(back.vec() - rotate_about_axis(UnitVec3::from_unit(kE3), -phi, e1).vec()) <= std::pow(phi, 5) / 120);
}

TEST_CASE("rk4 local order by step halving") {
  const auto u = deformational_velocity(1.05, 5);
  double worst_ratio = 1e300;
  for (const auto& p : random_units(50, 5)) {
    const double t = 1.7;
    double err[2];
    const double dts[2] = {0.1, 0.05};
    for (int i = 0; i < 2; ++i) {
      const auto ref = integrate(u, p, t, t - dts[i], 2000);
      err[i] = norm(rk4_backstep(u, p, t, dts[i]).vec() - ref.vec());
    }
    worst_ratio = std::min(worst_ratio, err[0] / err[1]);
  }
  MESSAGE("worst halving ratio ", worst_ratio);
  CHECK(std::log2(worst_ratio) >= 4.7);
}

TEST_CASE("first step samples the footpoints exactly") {
  const auto g = ps_geometry(2);
  const auto u = sbr_velocity(0.4, 1);
  const auto st = build_stencils(g->mesh(), 1e-5);
  const auto m = cm_step(std::nullopt, u, 0.1, 0.1, st, g);
  for (int v = 0; v < static_cast<int>(g->mesh().num_vertices()); ++v) {
    const auto& p = g->mesh().vertex(v);
    // the stencil mean is second order in epsilon
    CHECK(norm(m.eval_raw(p) - rk4_backstep(u, p, 0.1, 0.1).vec()) <= 1e-9);
  }
}

TEST_CASE("zero velocity keeps the interpolated identity") {
  const auto g = ps_geometry(2);
  CMConfig cfg;
  cfg.k = 2;
  cfg.steps = 5;
  const auto chain = run(zero_velocity(), cfg, g);
  REQUIRE(chain.size() == 1);
  const auto id = identity_map(g);
  // stencils straddle macro-triangles where the spline is only C1, so each
  // step perturbs the data by O(epsilon h); the error stays at the floor
  double floor = 0, err = 0;
  for (const auto& p : random_units(5000, 7)) {
    floor = std::max(floor, great_circle_distance(eval_map(id, p), p));
    err = std::max(err, great_circle_distance(chain.eval(p), p));
  }
  CHECK(err <= floor + 1e-6);

  cfg.steps = 1;
  const auto one = run(zero_velocity(), cfg, g);
  CHECK(one.size() == 1);
  CHECK(map_error(one, [](const UnitVec3& p) { return p; }, 1000, 1)[0] < 1e-2);
}

TEST_CASE("remap schedule") {
  CMConfig cfg;
  cfg.k = 1;
  cfg.steps = 10;
  cfg.remap_stride = 3;
  CMSolver s(sbr_velocity(0, 1), cfg);
  CHECK(s.dt() == doctest::Approx(0.1));
  std::vector<std::size_t> frozen;
  while (!s.done()) {
    s.step();
    frozen.push_back(s.frozen().size());
  }
  CHECK(frozen == std::vector<std::size_t>{0, 0, 1, 1, 1, 2, 2, 2, 3, 3});
  const auto c = s.snapshot();
  REQUIRE(c.size() == 4);
  CHECK(c.times()[0] == doctest::Approx(0.3));
  CHECK(c.times()[3] == doctest::Approx(1.0));
  CHECK_THROWS_AS(s.step(), Error);

  // a stride equal to the step count never remaps
  cfg.remap_stride = 10;
  CHECK(run(sbr_velocity(0, 1), cfg).size() == 1);
}

TEST_CASE("remapped and unremapped runs agree for a rotation") {
  CMConfig cfg;
  cfg.k = 3;
  cfg.steps = 12;
  const auto u = sbr_velocity(kPi / 4, 1);
  const auto a = run(u, cfg);
  cfg.remap_stride = 4;
  const auto b = run(u, cfg);
  for (const auto& p : random_units(500, 9)) CHECK(great_circle_distance(a.eval(p), b.eval(p)) < 1e-2);
}

TEST_CASE("solid body rotation converges") {
  std::vector<double> hs, es;
  for (int k = 2; k <= 4; ++k) {
    CMConfig cfg;
    cfg.k = k;
    cfg.steps = default_steps(k);
    const auto chain = run(sbr_velocity(0, 1), cfg);
    const auto e = map_error(chain, [](const UnitVec3& p) { return p; }, 20000, 11);
    hs.push_back(chain.submaps()[0].geometry().mesh().max_edge_length());
    es.push_back(std::max({e[0], e[1], e[2]}));
  }
  MESSAGE("map slope ", fit_slope(hs, es));
  CHECK(es[2] < es[1]);
  CHECK(es[1] < es[0]);
  CHECK(fit_slope(hs, es) >= 1.9);
}

TEST_CASE("large time steps") {
  // dt = 0.5 is several edge lengths at k = 3
  double prev = 1e300;
  for (int steps : {2, 4, 8}) {
    CMConfig cfg;
    cfg.k = 3;
    cfg.steps = steps;
    const auto chain = run(deformational_velocity(0, 1), cfg);
    const auto e = map_error(chain, [](const UnitVec3& p) { return p; }, 5000, 13);
    const double err = std::max({e[0], e[1], e[2]});
    CHECK(std::isfinite(err));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("progress") {
  CHECK(progress_line(3, 26, 0.125, 1.5e-7) == "step 3/26 t=0.125 max_norm_dev=1.500e-07");
  CMConfig cfg;
  cfg.k = 1;
  cfg.steps = 3;
  std::vector<int> seen;
  run(sbr_velocity(0, 1), cfg, [&](int n, int total, double t, double dev) {
    CHECK(total == 3);
    CHECK(t == doctest::Approx(n / 3.0));
    CHECK(dev >= 0);
    CHECK(dev < 0.1);
    seen.push_back(n);
  });
  CHECK(seen == std::vector<int>{1, 2, 3});
}

TEST_CASE("pullbacks") {
  const auto pts = random_units(2000, 15);
  const MapChain empty;
  const auto bells = cosine_bells();
  const auto v = pullback_tracer(empty, bells, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(v[i] == bells(pts[i]));
  const auto one = [](const UnitVec3&) { return 1.0; };
  for (double d : pullback_density(empty, one, pts)) CHECK(d == 1);

  CMConfig cfg;
  cfg.k = 3;
  cfg.steps = 18;
  cfg.T = 5;
  const auto chain = run(deformational_velocity(1.05, 5), cfg);
  const auto q1 = pullback_tracer(chain, correlated_q1(), pts);
  const auto q2 = pullback_tracer(chain, correlated_q2(), pts);
  double worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(q2[i] - correlated_relation(q1[i])));
  CHECK(worst <= 1e-13);

  const auto rho = pullback_density(chain, one, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(rho[i] == jacobian_determinant(chain, pts[i]));
}

TEST_CASE("deterministic reruns") {
  CMConfig cfg;
  cfg.k = 3;
  cfg.steps = 18;
  const auto tc = make_test_case("deform", 1.05, 1);
  const auto a = run(tc.velocity, cfg);
  const auto b = run(tc.velocity, cfg);
  CHECK(linf_error(a, tc.tracer, tc.exact_tracer, 20000, 42) == linf_error(b, tc.tracer, tc.exact_tracer, 20000, 42));
  for (const auto& p : random_units(1000, 17)) CHECK(a.eval(p) == b.eval(p));
}
