#include "cmm/testcases.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>

#include "cmm/error.hpp"

namespace cmm {

namespace {

using std::numbers::pi;

Vec3 sbr_axis(double alpha) { return {std::sin(alpha), 0, std::cos(alpha)}; }

// x' = A x rotates the vortex axis onto e3.
const Mat3 kVortexTilt = Mat3::rotation_x(pi / 2);

double bell_distance(const UnitVec3& p, double lambda_c, double theta_c) {
  return great_circle_distance(p, sph_to_cart({lambda_c, theta_c}));
}

constexpr double kBellRadius = 0.5;
constexpr double kBell1Lambda = 7 * pi / 6, kBell2Lambda = 5 * pi / 6, kBellTheta = pi / 2;

}  // namespace

VelocityField sbr_velocity(double alpha, double T) {
  const Vec3 grad_psi = (-2 * pi / T) * sbr_axis(alpha);
  return {"sbr", T, true, [grad_psi](const Vec3& x, double) { return cross(x, grad_psi); }};
}

UnitVec3 sbr_backward(double alpha, double T, double t, const UnitVec3& p) {
  return rotate_about_axis(UnitVec3::from_unit(sbr_axis(alpha)), -2 * pi * t / T, p);
}

RotatingFrame deformational_frame(double alpha, double T) {
  return {Mat3::rotation_y(alpha), 2 * pi / T, Mat3::identity()};
}

VelocityField deformational_velocity(double alpha, double T) {
  const auto sbr = sbr_velocity(alpha, T);
  const RotatingFrame frame = deformational_frame(alpha, T);
  return {"deform", T, true, [sbr, frame, T](const Vec3& x, double t) {
            const Mat3 r = frame.at(t);
            const Vec3 xp = r.transposed() * x;
            const double c = std::cos(pi * t / T);
            // x' x grad' psi_d with grad' psi_d = (0, 4 y' cos, 0)
            const Vec3 ud = cross(xp, Vec3{0, 4 * xp.y * c, 0});
            return sbr(x, t) + r * ud;
          }};
}

RotatingFrame vortex_frame(bool moving, double T) {
  return {Mat3::identity(), moving ? 2 * pi / T : 0.0, kVortexTilt.transposed()};
}

double vortex_speed_profile(double rho) {
  const double s = 1 / std::cosh(rho);
  return s * s * std::tanh(rho);
}

double vortex_omega(double theta_prime, double T) {
  const double rho = 3 * std::sin(theta_prime);
  if (rho == 0) return 0;
  return (2 * pi / T) * (3 * std::sqrt(3.0) / 2) * vortex_speed_profile(rho) / rho;
}

VelocityField vortex_velocity(bool moving, double T) {
  const RotatingFrame frame = vortex_frame(moving, T);
  const auto sbr = sbr_velocity(0, T);
  return {moving ? "vortex_moving" : "vortex_static", T, true, [frame, sbr, moving, T](const Vec3& x, double t) {
            const Mat3 r = frame.at(t);
            const Vec3 xp = r.transposed() * x;
            const double w = vortex_omega(std::atan2(std::hypot(xp.x, xp.y), xp.z), T);
            const Vec3 uv = r * Vec3{-xp.y * w, xp.x * w, 0};
            return moving ? uv + sbr(x, t) : uv;
          }};
}

double vortex_solution(const UnitVec3& p, double t, bool moving, double T) {
  const Vec3 xp = vortex_frame(moving, T).at(t).transposed() * p.vec();
  const SphCoord c = cart_to_sph(xp);
  const double rho = 3 * std::sin(c.theta);
  return 1 - std::tanh(rho / 5 * std::sin(c.lambda - vortex_omega(c.theta, T) * t));
}

UnitVec3 vortex_backward(bool moving, double T, double t, const UnitVec3& p) {
  const RotatingFrame frame = vortex_frame(moving, T);
  const Vec3 xp = frame.at(t).transposed() * p.vec();
  const double theta = std::atan2(std::hypot(xp.x, xp.y), xp.z);
  const Vec3 x0p = Mat3::rotation_z(-vortex_omega(theta, T) * t) * xp;
  return UnitVec3::project(frame.at(0) * x0p);
}

VelocityField compressible_velocity(double T) {
  return {"compressible", T, false, [T](const Vec3& x, double t) {
            const SphCoord c = cart_to_sph(x);
            const double st = std::sin(c.theta), ct = std::cos(c.theta);
            const double sl = std::sin(c.lambda), cl = std::cos(c.lambda);
            const double time = std::cos(pi * t / T);
            const double sh = std::sin(c.lambda / 2);
            const double u = -sh * sh * std::sin(2 * c.theta) * st * st * time;
            const double v = 0.5 * sl * st * st * st * time;
            // u = lambda' csc(theta), v = theta'
            const double lambda_dot = u * st, theta_dot = v;
            const Vec3 d_lambda{-st * sl, st * cl, 0};
            const Vec3 d_theta{ct * cl, ct * sl, -st};
            return lambda_dot * d_lambda + theta_dot * d_theta;
          }};
}

ScalarField cosine_bells() {
  return [](const UnitVec3& p) {
    auto g = [&](double lc) {
      const double r = bell_distance(p, lc, kBellTheta);
      return r < kBellRadius ? 0.5 * (1 + std::cos(pi * r / kBellRadius)) : 0.0;
    };
    return 0.1 + 0.9 * (g(kBell1Lambda) + g(kBell2Lambda));
  };
}

ScalarField zalesak_disks() {
  return [](const UnitVec3& p) {
    const SphCoord c = cart_to_sph(p);
    const double r = kBellRadius;
    const double lc[2] = {kBell1Lambda, kBell2Lambda};
    for (int i = 0; i < 2; ++i) {
      if (bell_distance(p, lc[i], kBellTheta) > r) continue;
      const bool in_slot_column = std::abs(c.lambda - lc[i]) < r / 6;
      if (!in_slot_column) return 1.0;
      if (i == 0 && c.theta - kBellTheta < -5.0 / 12 * r) return 1.0;
      if (i == 1 && c.theta - kBellTheta > 5.0 / 12 * r) return 1.0;
    }
    return 0.1;
  };
}

std::vector<double> real_sph_harmonics(const UnitVec3& p, int lmax) {
  const SphCoord c = cart_to_sph(p);
  const double ct = std::cos(c.theta), st = std::sin(c.theta);
  const int n = lmax + 1;
  // normalized associated Legendre values, row-major in (l, m)
  std::vector<double> P(n * n, 0.0);
  auto at = [&](int l, int m) -> double& { return P[l * n + m]; };
  at(0, 0) = 1 / std::sqrt(4 * pi);
  for (int m = 1; m <= lmax; ++m) at(m, m) = -std::sqrt((2.0 * m + 1) / (2.0 * m)) * st * at(m - 1, m - 1);
  for (int m = 0; m < lmax; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3) * ct * at(m, m);
  for (int m = 0; m <= lmax; ++m)
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1) / (1.0 * l * l - 1.0 * m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - 1.0 * m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1));
      at(l, m) = a * (ct * at(l - 1, m) - b * at(l - 2, m));
    }
  std::vector<double> Y((lmax + 1) * (lmax + 1));
  for (int l = 0; l <= lmax; ++l) {
    Y[l * l + l] = at(l, 0);
    for (int m = 1; m <= l; ++m) {
      Y[l * l + l + m] = std::sqrt(2.0) * at(l, m) * std::cos(m * c.lambda);
      Y[l * l + l - m] = std::sqrt(2.0) * at(l, m) * std::sin(m * c.lambda);
    }
  }
  return Y;
}

ScalarField random_sph_harmonics(std::uint64_t seed, int lmax) {
  if (lmax < 0) throw Error(ErrorKind::InvalidArgument, "lmax must be non-negative");
  auto coeffs = std::make_shared<std::vector<double>>((lmax + 1) * (lmax + 1));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  for (double& a : *coeffs) a = u(rng);
  return [coeffs, lmax](const UnitVec3& p) {
    const auto y = real_sph_harmonics(p, lmax);
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (*coeffs)[i] * y[i];
    return s;
  };
}

ScalarField correlated_q1() {
  return [](const UnitVec3& p) {
    for (double lc : {kBell1Lambda, kBell2Lambda}) {
      const double r = bell_distance(p, lc, kBellTheta);
      if (r < kBellRadius) return 0.1 + 0.45 * (1 + std::cos(pi * r / kBellRadius));
    }
    return 0.1;
  };
}

double correlated_relation(double q1) { return -0.8 * q1 * q1 + 0.9; }

ScalarField correlated_q2() {
  return [q1 = correlated_q1()](const UnitVec3& p) { return correlated_relation(q1(p)); };
}

ScalarField mandelbrot(const MandelbrotParams& params) {
  return [params](const UnitVec3& p) {
    if (great_circle_distance(p, kE3) < params.cap) return 0.0;
    const std::complex<double> w(p.x() / (1 - p.z()), p.y() / (1 - p.z()));
    const std::complex<double> c = std::complex<double>(params.center_re, params.center_im) + params.scale * w;
    std::complex<double> z = 0;
    for (int i = 0; i < params.max_iter; ++i) {
      z = z * z + c;
      const double a = std::abs(z);
      if (a > 2) {
        const double smooth = i + 1 - std::log(std::log(a)) / std::log(2.0);
        return std::clamp(smooth / params.max_iter, 0.0, std::nextafter(1.0, 0.0));
      }
    }
    return 1.0;
  };
}

const std::vector<std::string>& test_case_names() {
  static const std::vector<std::string> names{"sbr", "deform", "vortex_static", "vortex_moving", "compressible"};
  return names;
}

const std::vector<std::string>& tracer_names() {
  static const std::vector<std::string> names{"cosine_bells", "zalesak", "rsph", "q1", "q2", "mandelbrot", "vortex"};
  return names;
}

ScalarField make_tracer(const std::string& name, std::uint64_t seed) {
  if (name == "cosine_bells") return cosine_bells();
  if (name == "zalesak") return zalesak_disks();
  if (name == "rsph") return random_sph_harmonics(seed);
  if (name == "q1") return correlated_q1();
  if (name == "q2") return correlated_q2();
  if (name == "mandelbrot") return mandelbrot();
  if (name == "vortex") return [](const UnitVec3& p) { return vortex_solution(p, 0, false, 1); };
  throw Error(ErrorKind::InvalidArgument, "unknown tracer '" + name + "'");
}

TestCase make_test_case(const std::string& name, double alpha, double T, const std::string& tracer,
                        std::uint64_t seed) {
  if (!(T > 0)) throw Error(ErrorKind::InvalidArgument, "final time must be positive");
  TestCase tc;
  tc.name = name;
  tc.alpha = alpha;
  tc.T = T;
  const bool vortex = name == "vortex_static" || name == "vortex_moving";
  if (name == "sbr") {
    tc.velocity = sbr_velocity(alpha, T);
    tc.reversing = true;
  } else if (name == "deform") {
    tc.velocity = deformational_velocity(alpha, T);
    tc.reversing = true;
  } else if (name == "compressible") {
    tc.velocity = compressible_velocity(T);
    tc.reversing = true;
  } else if (vortex) {
    const bool moving = name == "vortex_moving";
    tc.velocity = vortex_velocity(moving, T);
    tc.exact_map = [moving, T](const UnitVec3& p) { return vortex_backward(moving, T, T, p); };
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown test '" + name + "'");
  }
  if (tc.reversing) tc.exact_map = [](const UnitVec3& p) { return p; };

  const std::string tracer_name = tracer.empty() ? (vortex ? "vortex" : "cosine_bells") : tracer;
  tc.tracer = make_tracer(tracer_name, seed);
  if (vortex && tracer_name == "vortex") {
    const bool moving = name == "vortex_moving";
    tc.exact_tracer = [moving, T](const UnitVec3& p) { return vortex_solution(p, T, moving, T); };
  } else {
    tc.exact_tracer = [phi0 = tc.tracer, map = tc.exact_map](const UnitVec3& p) { return phi0(map(p)); };
  }
  return tc;
}

}  // namespace cmm
