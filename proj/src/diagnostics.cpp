#include "cmm/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cmm/error.hpp"
#include "cmm/parallel.hpp"

namespace cmm {

namespace {

constexpr std::size_t kChunk = 4096;

// Reduces per-chunk maxima in chunk order.
template <class PerPoint>
std::vector<double> chunk_maxima(std::size_t n, std::size_t width, PerPoint&& f) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks * width, 0.0);
  parallel_chunks(n, kChunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) f(i, &partial[c * width]);
  });
  std::vector<double> out(width, 0.0);
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t w = 0; w < width; ++w) out[w] = std::max(out[w], partial[c * width + w]);
  return out;
}

}  // namespace

std::string csv_header() { return "test,k,Nt,remaps,linf,l1,map_x,map_y,map_z,density,mass,walltime,seed"; }

std::string to_csv(const ErrorReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.3f,%llu", r.test.c_str(), r.k,
                r.steps, r.remaps, r.linf, r.l1, r.map[0], r.map[1], r.map[2], r.density, r.mass, r.walltime,
                static_cast<unsigned long long>(r.seed));
  return buf;
}

std::vector<UnitVec3> sample_sphere(std::size_t n, std::uint64_t seed) {
  std::vector<UnitVec3> pts(n);
  parallel_chunks(n, kChunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = lo; i < hi; ++i) {
      Vec3 v;
      do {
        v = {g(rng), g(rng), g(rng)};
      } while (norm(v) < 1e-12);
      pts[i] = UnitVec3::project(v);
    }
  });
  return pts;
}

double linf_error(const MapChain& chain, const ScalarField& phi0, const ScalarField& exact, std::size_t n_samples,
                  std::uint64_t seed) {
  const auto pts = sample_sphere(n_samples, seed);
  const auto m = chunk_maxima(pts.size(), 2, [&](std::size_t i, double* acc) {
    const double e = exact(pts[i]);
    acc[0] = std::max(acc[0], std::abs(phi0(chain.eval(pts[i])) - e));
    acc[1] = std::max(acc[1], std::abs(e));
  });
  return m[1] > 0 ? m[0] / m[1] : m[0];
}

double l1_error(const MapChain& chain, const ScalarField& phi0, const ScalarField& exact,
                const SphericalTriangulation& mesh) {
  const std::size_t nv = mesh.num_vertices();
  std::vector<double> err(nv), ref(nv);
  parallel_for(nv, [&](std::size_t v) {
    const auto& p = mesh.vertex(static_cast<int>(v));
    const double e = exact(p);
    err[v] = std::abs(phi0(chain.eval(p)) - e);
    ref[v] = std::abs(e);
  });
  double num = 0, den = 0;
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const double w = mesh.triangle_area(t) / 3;
    for (int v : mesh.triangle(t)) {
      num += err[v] * w;
      den += ref[v] * w;
    }
  }
  return den > 0 ? num / den : num;
}

std::array<double, 3> map_error(const MapChain& chain, const std::function<UnitVec3(const UnitVec3&)>& exact_map,
                                std::size_t n_samples, std::uint64_t seed) {
  const auto pts = sample_sphere(n_samples, seed);
  const auto m = chunk_maxima(pts.size(), 3, [&](std::size_t i, double* acc) {
    const Vec3 d = chain.eval(pts[i]).vec() - exact_map(pts[i]).vec();
    for (int c = 0; c < 3; ++c) acc[c] = std::max(acc[c], std::abs(d[c]));
  });
  return {m[0], m[1], m[2]};
}

double mass_integral(const MapChain& chain, int N) {
  using std::numbers::pi;
  if (N < 8) throw Error(ErrorKind::InvalidArgument, "mass quadrature needs N >= 8");
  const double inset = 1e-10;
  const double dl = 2 * pi / N, dt = (pi - 2 * inset) / N;
  const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
  // one partial sum per theta row, added in row order
  std::vector<double> rows(N, 0.0);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t row) {
    double s = 0;
    for (int col = 0; col < N; ++col)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double theta = inset + (row + 0.5 + 0.5 * gx[a]) * dt;
          const double lambda = (col + 0.5 + 0.5 * gx[b]) * dl;
          const double st = std::sin(theta), ct = std::cos(theta);
          const double sl = std::sin(lambda), cl = std::cos(lambda);
          const auto p = UnitVec3::project({st * cl, st * sl, ct});
          const Vec3 e_theta{ct * cl, ct * sl, -st};
          const Vec3 e_lambda{-st * sl, st * cl, 0};
          const auto [x, xt] = chain.eval_with_differential(p, e_theta);
          const Vec3 xl = chain.eval_with_differential(p, e_lambda).second;
          s += gw[a] * gw[b] * det3(x, xt, xl);
        }
    rows[row] = s * 0.25 * dl * dt;
  });
  double total = 0;
  for (double r : rows) total += r;
  return total / (4 * pi);
}

double density_error(const MapChain& chain, std::size_t n_samples, std::uint64_t seed) {
  const auto pts = sample_sphere(n_samples, seed);
  return chunk_maxima(pts.size(), 1, [&](std::size_t i, double* acc) {
    acc[0] = std::max(acc[0], std::abs(1 - chain.eval_with_jacobian(pts[i]).second));
  })[0];
}

double convergence_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
  if (hs.size() != errs.size()) throw Error(ErrorKind::InvalidArgument, "h and error lists differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (errs[i] >= 1e-12 && hs[i] > 0) {
      x.push_back(std::log(hs[i]));
      y.push_back(std::log(errs[i]));
    }
  if (x.size() < 2) throw Error(ErrorKind::InsufficientData, "a slope needs at least two errors above 1e-12");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw Error(ErrorKind::InsufficientData, "all mesh sizes are equal");
  return sxy / sxx;
}

}  // namespace cmm
