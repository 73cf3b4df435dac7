#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmm/evolver.hpp"

namespace cmm {

/// One row of a convergence table.
struct ErrorReport {
  std::string test;
  int k = 0;
  int steps = 0;
  int remaps = 0;
  double linf = 0;
  double l1 = 0;
  std::array<double, 3> map{0, 0, 0};
  double density = 0;
  double mass = 0;
  double walltime = 0;
  std::uint64_t seed = 42;
};

/// "test,k,Nt,remaps,linf,l1,map_x,map_y,map_z,density,mass,walltime,seed"
std::string csv_header();
std::string to_csv(const ErrorReport& r);

/// n uniform points on the sphere (normalized Gaussian triples). Points are
/// drawn in fixed chunks whose generators are seeded from (seed, chunk), so
/// the set depends only on n and seed.
std::vector<UnitVec3> sample_sphere(std::size_t n, std::uint64_t seed);

/// max |phi0 o X - exact| / max |exact| over n random points.
double linf_error(const MapChain& chain, const ScalarField& phi0, const ScalarField& exact,
                  std::size_t n_samples = 1000000, std::uint64_t seed = 42);

/// Vertex-rule L1 error: sum over triangles of |err| at the corners times
/// area / 3, relative to the same sum of |exact|.
double l1_error(const MapChain& chain, const ScalarField& phi0, const ScalarField& exact,
                const SphericalTriangulation& mesh);

/// Per-component sup error of the chain against an exact map.
std::array<double, 3> map_error(const MapChain& chain, const std::function<UnitVec3(const UnitVec3&)>& exact_map,
                                std::size_t n_samples, std::uint64_t seed);

/// (1/4pi) times the integral of the pulled-back area form, with N x N cells
/// in (lambda, theta) and 3 x 3 Gauss-Legendre points per cell. Requires N >= 8.
double mass_integral(const MapChain& chain, int N);

/// sup |1 - J| over n random points.
double density_error(const MapChain& chain, std::size_t n_samples, std::uint64_t seed);

/// Least-squares slope of log(err) against log(h); pairs with err < 1e-12 are
/// dropped. Throws InsufficientData with fewer than two usable pairs.
double convergence_slope(const std::vector<double>& hs, const std::vector<double>& errs);

}  // namespace cmm
