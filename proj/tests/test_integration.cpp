#include <chrono>
#include <cmath>
#include <sstream>

#include "cmm/diagnostics.hpp"
#include "cmm/testcases.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmm;
using namespace cmm::testing;

namespace {

MapChain run_case(const TestCase& tc, int k, int stride = 0, int steps = 0) {
  CMConfig cfg;
  cfg.k = k;
  cfg.T = tc.T;
  cfg.steps = steps > 0 ? steps : default_steps(k);
  cfg.remap_stride = stride;
  return run(tc.velocity, cfg);
}

double h_of(const MapChain& c) { return c.submaps()[0].geometry().mesh().max_edge_length(); }

double best_time(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

TEST_CASE("deformational map error follows a second order sequence") {
  const auto tc = make_test_case("deform", 0, 1);
  std::vector<double> hs, es;
  for (int k = 2; k <= 4; ++k) {
    const auto c = run_case(tc, k);
    const auto e = map_error(c, tc.exact_map, 50000, 3);
    hs.push_back(h_of(c));
    es.push_back(std::max({e[0], e[1], e[2]}));
  }
  MESSAGE("deform map slope ", fit_slope(hs, es));
  CHECK(fit_slope(hs, es) >= 1.9);
}

TEST_CASE("compressible flow at T = 5") {
  const auto tc = make_test_case("compressible", 0, 5);
  std::vector<double> hs, ds;
  for (int k = 2; k <= 4; ++k) {
    const auto c = run_case(tc, k);
    hs.push_back(h_of(c));
    ds.push_back(density_error(c, 50000, 5));
    // every output stays on the sphere
    for (const auto& p : random_units(1000, 7)) CHECK(std::abs(norm(c.eval(p)) - 1) <= 1e-13);
  }
  MESSAGE("compressible density slope ", fit_slope(hs, ds));
  CHECK(fit_slope(hs, ds) >= 0.9);
}

TEST_CASE("remapping does not change a smooth solution much") {
  const auto tc = make_test_case("deform", 1.05, 1);
  const auto a = run_case(tc, 3);
  const auto b = run_case(tc, 3, 6);
  CHECK(b.size() == 3);
  const double ea = linf_error(a, tc.tracer, tc.exact_tracer, 50000, 9);
  const double eb = linf_error(b, tc.tracer, tc.exact_tracer, 50000, 9);
  CHECK(eb < 3 * ea);
  CHECK(ea < 3 * eb);
}

TEST_CASE("serialized chain reproduces the error report") {
  const auto tc = make_test_case("vortex_static", 0, 1);
  const auto c = run_case(tc, 3, 7);
  std::stringstream ss;
  write_chain(ss, c);
  const auto back = read_chain(ss);
  CHECK(linf_error(back, tc.tracer, tc.exact_tracer, 20000, 11) == linf_error(c, tc.tracer, tc.exact_tracer, 20000, 11));
  CHECK(density_error(back, 20000, 11) == density_error(c, 20000, 11));
  CHECK(mass_integral(back, 16) == mass_integral(c, 16));
}

TEST_CASE("cost is linear in triangles and steps") {
  const auto u = sbr_velocity(0.3, 1);
  auto timed = [&](int k, int steps) {
    CMConfig cfg;
    cfg.k = k;
    cfg.steps = steps;
    return best_time([&] { run(u, cfg); }, 3);
  };
  const double t3 = timed(3, 40), t5 = timed(5, 10);
  // N_tri grows 16x from k=3 to k=5 and N_t shrinks 4x: 4x the work
  const double ratio = (t5 / t3) / 4;
  MESSAGE("cost ratio against linear prediction ", ratio);
  CHECK(ratio >= 0.7);
  CHECK(ratio <= 1.5);
  const double s10 = timed(4, 10), s20 = timed(4, 20);
  const double steps_ratio = (s20 / s10) / 2;
  MESSAGE("step ratio against linear prediction ", steps_ratio);
  CHECK(steps_ratio >= 0.7);
  CHECK(steps_ratio <= 1.5);
}
