#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmm/evolver.hpp"

namespace cmm {

/// R(t) = pre * Rz(rate * t) * post, taking rotating-frame coordinates to
/// inertial ones. A field u' given in the rotating frame reads
/// u(x, t) = R(t) u'(R(t)^T x, t) in the inertial frame.
struct RotatingFrame {
  Mat3 pre = Mat3::identity();
  double rate = 0;
  Mat3 post = Mat3::identity();

  Mat3 at(double t) const { return pre * Mat3::rotation_z(rate * t) * post; }
};

/// Solid body rotation about (sin a, 0, cos a), one revolution per T.
VelocityField sbr_velocity(double alpha, double T);
/// Exact backward map of the solid body rotation at time t.
UnitVec3 sbr_backward(double alpha, double T, double t, const UnitVec3& p);

/// Frame that co-rotates with sbr_velocity(alpha, T).
RotatingFrame deformational_frame(double alpha, double T);
/// Reversing deformation 2 y'^2 cos(pi t / T) riding on a solid body rotation.
VelocityField deformational_velocity(double alpha, double T);

/// Frame of the vortex pair: x' = R(t)^T x puts the vortex centres at the
/// poles of the primed coordinates.
RotatingFrame vortex_frame(bool moving, double T);
/// Angular velocity about the vortex axis at primed colatitude theta'.
double vortex_omega(double theta_prime, double T);
/// sech^2(rho) tanh(rho): the tangential speed profile of the vortex.
double vortex_speed_profile(double rho);
VelocityField vortex_velocity(bool moving, double T);
/// Exact tracer 1 - tanh[(rho / 5) sin(lambda' - omega t)].
double vortex_solution(const UnitVec3& p, double t, bool moving, double T);
/// Exact backward map of the vortex flow at time t.
UnitVec3 vortex_backward(bool moving, double T, double t, const UnitVec3& p);

/// Divergent reversing flow, given through longitude/colatitude rates.
VelocityField compressible_velocity(double T);

// Initial tracers.
ScalarField cosine_bells();
ScalarField zalesak_disks();
ScalarField random_sph_harmonics(std::uint64_t seed = 42, int lmax = 32);
ScalarField correlated_q1();
/// -0.8 q1^2 + 0.9.
double correlated_relation(double q1);
ScalarField correlated_q2();

struct MandelbrotParams {
  double center_re = -0.235125;
  double center_im = 0.827215;
  double scale = 4e-5;
  double cap = 1e-9;
  int max_iter = 500;
};
/// Escape-time field on the stereographic plane from the north pole: 1 inside
/// the set, smoothed escape count scaled to [0, 1) outside, 0 in the polar cap.
ScalarField mandelbrot(const MandelbrotParams& params = {});

/// Fully normalized real spherical harmonics Y_lm for 0 <= l <= lmax,
/// -l <= m <= l, stored at index l*l + l + m.
std::vector<double> real_sph_harmonics(const UnitVec3& p, int lmax);

/// A named experiment: its velocity, initial tracer, and exact backward map
/// and tracer at the final time T.
struct TestCase {
  std::string name;
  double alpha = 0;
  double T = 1;
  VelocityField velocity;
  ScalarField tracer;
  std::function<UnitVec3(const UnitVec3&)> exact_map;
  ScalarField exact_tracer;
  bool reversing = false;
};

/// Names accepted by make_test_case.
const std::vector<std::string>& test_case_names();

/// Tracer names accepted by make_tracer: cosine_bells, zalesak, rsph, q1, q2,
/// mandelbrot, vortex.
const std::vector<std::string>& tracer_names();
ScalarField make_tracer(const std::string& name, std::uint64_t seed = 42);

/// tracer = "" picks the test's natural tracer (vortex profile for the vortex
/// tests, cosine bells otherwise). Throws InvalidArgument for unknown names.
TestCase make_test_case(const std::string& name, double alpha, double T, const std::string& tracer = "",
                        std::uint64_t seed = 42);

}  // namespace cmm
