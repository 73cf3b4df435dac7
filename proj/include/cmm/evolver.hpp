#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmm/map_field.hpp"
#include "cmm/stencil.hpp"

namespace cmm {

/// Time-dependent tangent vector field on the sphere.
struct VelocityField {
  std::string name;
  double period = 1;
  bool divergence_free = true;
  std::function<Vec3(const Vec3&, double)> fn;

  Vec3 operator()(const Vec3& x, double t) const { return fn(x, t); }
};

/// Zero field, mostly for tests.
VelocityField zero_velocity();

struct CMConfig {
  int k = 4;
  int steps = 26;
  double T = 1;
  /// Steps between remaps; 0 never remaps.
  int remap_stride = 0;
  double epsilon = 1e-5;
  std::uint64_t seed = 42;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// Default schedule 2^k + 10 steps.
int default_steps(int k);

/// One classical RK4 step of dx/dt = u(x, t) from t back to t - dt; every
/// stage argument and the result are projected onto the sphere.
UnitVec3 rk4_backstep(const VelocityField& u, const UnitVec3& x, double t, double dt);

/// New submap of the current window at time t_next: stencil points are
/// traced back over dt, the previous submap of the window (identity when
/// absent) is evaluated at the footpoints, and Hermite data are rebuilt.
SphereMapSpline cm_step(const std::optional<SphereMapSpline>& current, const VelocityField& u, double t_next,
                        double dt, const VertexStencilSet& stencils,
                        std::shared_ptr<const PowellSabinGeometry> geometry);

/// Largest |norm - 1| of the pre-projection map at the macro barycenters.
double max_norm_deviation(const SphereMapSpline& m);

/// Incremental time loop. Each step rebuilds only the current submap; at a
/// remap boundary the submap is frozen onto the chain and the window
/// restarts from the identity.
class CMSolver {
 public:
  CMSolver(VelocityField u, CMConfig cfg, std::shared_ptr<const PowellSabinGeometry> geometry);
  CMSolver(VelocityField u, CMConfig cfg);

  /// Advances one step. Throws NumericalFailure on non-finite map values.
  void step();
  bool done() const { return steps_done_ >= cfg_.steps; }
  int steps_done() const { return steps_done_; }
  double time() const { return steps_done_ * dt_; }
  double dt() const { return dt_; }
  double last_norm_deviation() const { return last_norm_dev_; }

  /// Chain of frozen windows only.
  const MapChain& frozen() const { return chain_; }
  /// Chain including the current window, i.e. the backward map at time().
  MapChain snapshot() const;

  const std::shared_ptr<const PowellSabinGeometry>& geometry() const { return geometry_; }
  const CMConfig& config() const { return cfg_; }

 private:
  VelocityField u_;
  CMConfig cfg_;
  std::shared_ptr<const PowellSabinGeometry> geometry_;
  VertexStencilSet stencils_;
  MapChain chain_;
  std::optional<SphereMapSpline> current_;
  double dt_;
  int steps_done_ = 0;
  double last_norm_dev_ = 0;
};

/// Receives (step, steps, time, max_norm_dev) after every step.
using ProgressFn = std::function<void(int, int, double, double)>;

/// Runs all steps and returns the chain approximating the backward map at T.
MapChain run(const VelocityField& u, const CMConfig& cfg, const ProgressFn& progress = {});
MapChain run(const VelocityField& u, const CMConfig& cfg, std::shared_ptr<const PowellSabinGeometry> geometry,
             const ProgressFn& progress = {});

/// Formats a progress line "step n/N t=... max_norm_dev=...".
std::string progress_line(int step, int steps, double t, double max_norm_dev);

using ScalarField = std::function<double(const UnitVec3&)>;

/// phi0 o X at every point.
std::vector<double> pullback_tracer(const MapChain& chain, const ScalarField& phi0, const std::vector<UnitVec3>& points);
/// rho0 o X times the Jacobian determinant of X at every point.
std::vector<double> pullback_density(const MapChain& chain, const ScalarField& rho0,
                                     const std::vector<UnitVec3>& points);

}  // namespace cmm
