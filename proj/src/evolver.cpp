#include "cmm/evolver.hpp"

#include <cmath>
#include <cstdio>

#include "cmm/error.hpp"
#include "cmm/parallel.hpp"

namespace cmm {

VelocityField zero_velocity() {
  return {"zero", 1, true, [](const Vec3&, double) { return Vec3{}; }};
}

void CMConfig::validate() const {
  if (k < 0 || k > SphericalTriangulation::kMaxLevel)
    throw Error(ErrorKind::InvalidArgument, "refinement level k out of range");
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "number of steps must be at least 1");
  if (!(T > 0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidArgument, "final time must be positive");
  if (remap_stride < 0 || remap_stride > steps)
    throw Error(ErrorKind::InvalidArgument, "remap stride must be in [0, steps]");
  if (!(epsilon > 0 && epsilon <= 1e-3)) throw Error(ErrorKind::InvalidArgument, "epsilon must be in (0, 1e-3]");
}

int default_steps(int k) { return (1 << k) + 10; }

UnitVec3 rk4_backstep(const VelocityField& u, const UnitVec3& x, double t, double dt) {
  const Vec3& x0 = x;
  const double half = 0.5 * dt;
  const Vec3 k1 = u(x0, t);
  const Vec3 k2 = u(UnitVec3::project(x0 - half * k1), t - half);
  const Vec3 k3 = u(UnitVec3::project(x0 - half * k2), t - half);
  const Vec3 k4 = u(UnitVec3::project(x0 - dt * k3), t - dt);
  return UnitVec3::project(x0 - (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4));
}

SphereMapSpline cm_step(const std::optional<SphereMapSpline>& current, const VelocityField& u, double t_next,
                        double dt, const VertexStencilSet& stencils,
                        std::shared_ptr<const PowellSabinGeometry> geometry) {
  const std::size_t nv = geometry->mesh().num_vertices();
  if (stencils.points.size() != nv) throw Error(ErrorKind::InvalidArgument, "stencil set does not match the mesh");
  std::array<HermiteData, 3> samples;
  for (auto& s : samples) s.resize(nv);
  parallel_for(nv, [&](std::size_t v) {
    std::array<std::array<double, 4>, 3> f;
    for (int q = 0; q < 4; ++q) {
      const UnitVec3 foot = rk4_backstep(u, stencils.points[v][q], t_next, dt);
      const UnitVec3 value = current ? current->eval(foot) : foot;
      for (int c = 0; c < 3; ++c) f[c][q] = value[c];
    }
    for (int c = 0; c < 3; ++c) samples[c][v] = reconstruct_hermite(f[c], stencils.epsilon);
  });
  for (const auto& s : samples)
    for (const auto& h : s)
      if (!std::isfinite(h.f) || !std::isfinite(h.d1) || !std::isfinite(h.d2))
        throw Error(ErrorKind::NumericalFailure, "non-finite map data after a step");
  return interp_map(std::move(geometry), samples);
}

double max_norm_deviation(const SphereMapSpline& m) {
  double worst = 0;
  for (std::size_t t = 0; t < m.geometry().num_triangles(); ++t) {
    // v4 is the third corner of the first sub-triangle
    const Vec3 raw = m.eval_raw(Location{static_cast<int>(t), 0, {0, 0, 1}});
    worst = std::max(worst, std::abs(norm(raw) - 1));
  }
  return worst;
}

CMSolver::CMSolver(VelocityField u, CMConfig cfg, std::shared_ptr<const PowellSabinGeometry> geometry)
    : u_(std::move(u)), cfg_(cfg), geometry_(std::move(geometry)) {
  cfg_.validate();
  stencils_ = build_stencils(geometry_->mesh(), cfg_.epsilon);
  dt_ = cfg_.T / cfg_.steps;
}

CMSolver::CMSolver(VelocityField u, CMConfig cfg)
    : CMSolver(std::move(u), cfg,
               std::make_shared<const PowellSabinGeometry>(
                   std::make_shared<const SphericalTriangulation>(SphericalTriangulation::icosahedral(cfg.k)))) {}

void CMSolver::step() {
  if (done()) throw Error(ErrorKind::InvalidArgument, "solver already reached the final time");
  const double t_next = (steps_done_ + 1) * dt_;
  current_ = cm_step(current_, u_, t_next, dt_, stencils_, geometry_);
  last_norm_dev_ = max_norm_deviation(*current_);
  if (!std::isfinite(last_norm_dev_)) throw Error(ErrorKind::NumericalFailure, "non-finite submap");
  ++steps_done_;
  if (cfg_.remap_stride > 0 && steps_done_ % cfg_.remap_stride == 0 && steps_done_ < cfg_.steps) {
    chain_.push(std::move(*current_), time());
    current_.reset();
  }
}

MapChain CMSolver::snapshot() const {
  MapChain c = chain_;
  if (current_) c.push(*current_, time());
  return c;
}

MapChain run(const VelocityField& u, const CMConfig& cfg, std::shared_ptr<const PowellSabinGeometry> geometry,
             const ProgressFn& progress) {
  CMSolver solver(u, cfg, std::move(geometry));
  while (!solver.done()) {
    solver.step();
    if (progress) progress(solver.steps_done(), cfg.steps, solver.time(), solver.last_norm_deviation());
  }
  return solver.snapshot();
}

MapChain run(const VelocityField& u, const CMConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  return run(u, cfg,
             std::make_shared<const PowellSabinGeometry>(
                 std::make_shared<const SphericalTriangulation>(SphericalTriangulation::icosahedral(cfg.k))),
             progress);
}

std::string progress_line(int step, int steps, double t, double max_norm_dev) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "step %d/%d t=%.6g max_norm_dev=%.3e", step, steps, t, max_norm_dev);
  return buf;
}

std::vector<double> pullback_tracer(const MapChain& chain, const ScalarField& phi0,
                                    const std::vector<UnitVec3>& points) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = phi0(chain.eval(points[i])); });
  return out;
}

std::vector<double> pullback_density(const MapChain& chain, const ScalarField& rho0,
                                     const std::vector<UnitVec3>& points) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [image, j] = chain.eval_with_jacobian(points[i]);
    out[i] = rho0(image) * j;
  });
  return out;
}

}  // namespace cmm
