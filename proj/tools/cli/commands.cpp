#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "cmm/diagnostics.hpp"
#include "cmm/error.hpp"
#include "cmm/testcases.hpp"

namespace cmm::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDeskMaxLevel = 6;

[[noreturn]] void bad(const std::string& origin, const std::string& msg) {
  throw Error(ErrorKind::Config, origin + ": " + msg);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Destination for the main output: spec.out when set, else the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

bool needs_test(const std::string& cmd) { return cmd == "converge" || cmd == "run" || cmd == "remap-study"; }

RunSpec defaults_for(const std::string& cmd) {
  RunSpec s;
  s.command = cmd;
  if (cmd == "mesh") {
    s.test = "none";
    s.k_min = 0;
    s.k_max = 6;
  } else if (cmd == "converge") {
    s.test = "sbr";
    s.k_min = 2;
    s.k_max = 5;
  } else if (cmd == "run") {
    s.test = "sbr";
  } else if (cmd == "sample" || cmd == "render") {
    s.test = "none";
    s.samples = 10000;
  } else if (cmd == "mixing") {
    s.test = "deform";
    s.alpha = 1.05;
    s.T = 5;
  } else if (cmd == "mass") {
    s.test = "compressible";
    s.T = 5;
  } else if (cmd == "remap-study") {
    s.test = "vortex_moving";
    s.T = 2;
    s.steps = 250;
    s.tracer = "rsph";
    s.samples = 100000;
  } else {
    throw Error(ErrorKind::Config, "unknown subcommand '" + cmd + "'");
  }
  return s;
}

int steps_to(const RunSpec& spec, int k, double t) {
  const int total = spec.steps > 0 ? spec.steps : default_steps(k);
  return std::max(1, static_cast<int>(std::lround(total * t / spec.T)));
}

struct Timed {
  MapChain chain;
  double walltime = 0;
  int steps = 0;
};

Timed run_case(const RunSpec& spec, const TestCase& tc, int k, double t, int stride, std::ostream* progress) {
  CMConfig cfg;
  cfg.k = k;
  cfg.T = t;
  cfg.steps = steps_to(spec, k, t);
  cfg.remap_stride = stride;
  cfg.epsilon = spec.epsilon;
  cfg.seed = spec.seed;
  cfg.validate();
  ProgressFn fn;
  if (progress)
    fn = [progress](int n, int total, double time, double dev) {
      *progress << progress_line(n, total, time, dev) << "\n";
    };
  const auto t0 = std::chrono::steady_clock::now();
  Timed r{run(tc.velocity, cfg, fn), 0, cfg.steps};
  r.walltime = seconds_since(t0);
  return r;
}

TestCase case_of(const RunSpec& spec) { return make_test_case(spec.test, spec.alpha, spec.T, spec.tracer, spec.seed); }

ScalarField tracer_of(const RunSpec& spec) {
  if (spec.test == "none") return make_tracer(spec.tracer.empty() ? "cosine_bells" : spec.tracer, spec.seed);
  return case_of(spec).tracer;
}

ErrorReport measure(const RunSpec& spec, const TestCase& tc, const Timed& r, int k) {
  ErrorReport rep;
  rep.test = tc.name;
  rep.k = k;
  rep.steps = r.steps;
  rep.remaps = static_cast<int>(r.chain.size()) - 1;
  rep.linf = linf_error(r.chain, tc.tracer, tc.exact_tracer, spec.samples, spec.seed);
  rep.l1 = l1_error(r.chain, tc.tracer, tc.exact_tracer, r.chain.submaps()[0].geometry().mesh());
  rep.map = map_error(r.chain, tc.exact_map, spec.samples, spec.seed);
  rep.density = density_error(r.chain, spec.samples, spec.seed);
  rep.mass = std::abs(1 - mass_integral(r.chain, spec.mass_n));
  rep.walltime = r.walltime;
  rep.seed = spec.seed;
  return rep;
}

void log_slope(std::ostream& log, const char* name, const std::vector<double>& hs, const std::vector<double>& es) {
  log << "# slope " << name << " ";
  try {
    log << fmt("%.3f", convergence_slope(hs, es)) << "\n";
  } catch (const Error&) {
    log << "n/a\n";
  }
}

}  // namespace

RunSpec make_spec(const std::string& command, const Settings& settings) {
  RunSpec s = defaults_for(command);
  auto get = [&](const char* key) -> std::optional<Setting> {
    const auto it = settings.find(key);
    if (it == settings.end()) return std::nullopt;
    return it->second;
  };
  auto origin = [&](const char* key) {
    const auto v = get(key);
    return v ? v->origin : std::string("default ") + key;
  };
  if (auto v = get("test")) s.test = v->value;
  if (auto v = get("alpha")) s.alpha = as_double(*v);
  if (auto v = get("T")) s.T = as_double(*v);
  if (auto v = get("tracer")) s.tracer = v->value;
  if (auto v = get("seed")) {
    const int seed = as_int(*v);
    if (seed < 0) bad(v->origin, "seed must be non-negative");
    s.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto v = get("k")) std::tie(s.k_min, s.k_max) = as_range(*v);
  if (auto v = get("steps")) s.steps = as_int(*v);
  if (auto v = get("remap_stride")) s.remap_stride = as_int(*v);
  if (auto v = get("epsilon")) s.epsilon = as_double(*v);
  if (auto v = get("allow_deep")) s.allow_deep = as_bool(*v);
  if (auto v = get("out")) s.out = v->value;
  if (auto v = get("image")) s.image = v->value;
  if (auto v = get("values")) s.values = v->value;
  if (auto v = get("chain")) s.chain = v->value;
  if (auto v = get("input")) s.input = v->value;
  if (auto v = get("samples")) {
    const int n = as_int(*v);
    if (n < 1) bad(v->origin, "samples must be positive");
    s.samples = static_cast<std::size_t>(n);
  }
  if (auto v = get("mass_n")) s.mass_n = as_int(*v);
  if (auto v = get("mode")) s.mode = v->value;
  if (s.mode == "window") s.height = 1000;
  if (auto v = get("width")) s.width = as_int(*v);
  if (auto v = get("height")) s.height = as_int(*v);
  if (auto v = get("center_lon")) s.center_lon = as_double(*v);
  if (auto v = get("center_colat")) s.center_colat = as_double(*v);
  if (auto v = get("fov")) s.fov = as_double(*v);
  if (auto v = get("time")) s.time = as_double(*v);
  if (auto v = get("colormap")) s.colormap = v->value;
  if (auto v = get("vmin")) s.vmin = as_double(*v);
  if (auto v = get("vmax")) s.vmax = as_double(*v);
  s.auto_range = !get("vmin") && !get("vmax");
  if (get("vmin").has_value() != get("vmax").has_value()) bad(origin(get("vmin") ? "vmin" : "vmax"), "set both vmin and vmax");
  if (auto v = get("n_list")) s.n_list = as_int_list(*v);
  if (auto v = get("grid")) s.grid = as_int(*v);
  if (auto v = get("strides")) s.strides = as_int_list(*v);

  const auto& names = test_case_names();
  const bool known_test = std::find(names.begin(), names.end(), s.test) != names.end();
  if (!known_test && !(s.test == "none" && !needs_test(command)))
    bad(origin("test"), "unknown test '" + s.test + "'");
  if (!s.tracer.empty()) {
    const auto& tr = tracer_names();
    if (std::find(tr.begin(), tr.end(), s.tracer) == tr.end()) bad(origin("tracer"), "unknown tracer '" + s.tracer + "'");
  }
  if (!(s.T > 0) || !std::isfinite(s.T)) bad(origin("T"), "T must be positive");
  if (!std::isfinite(s.alpha)) bad(origin("alpha"), "alpha must be finite");
  if (s.k_min < 0 || s.k_max > SphericalTriangulation::kMaxLevel)
    bad(origin("k"), "k must lie in [0, " + std::to_string(SphericalTriangulation::kMaxLevel) + "]");
  if (s.k_max > kDeskMaxLevel && !s.allow_deep)
    throw Error(ErrorKind::RefinementTooDeep,
                origin("k") + ": k > 6 needs --allow-deep (memory and run time grow 4x per level)");
  if (command != "mesh" && command != "converge" && s.k_min != s.k_max) bad(origin("k"), "k must be a single level");
  if (s.steps < 0) bad(origin("steps"), "steps must be non-negative");
  if (s.remap_stride < 0) bad(origin("remap_stride"), "remap_stride must be non-negative");
  if (!(s.epsilon > 0 && s.epsilon <= 1e-3)) bad(origin("epsilon"), "epsilon must be in (0, 1e-3]");
  if (s.mass_n < 8) bad(origin("mass_n"), "mass_n must be at least 8");
  if (s.width < 1 || s.height < 1 || s.width > 20000 || s.height > 20000)
    bad(origin(get("width") ? "width" : "height"), "image size must be in [1, 20000]");
  if (s.mode != "equirect" && s.mode != "window") bad(origin("mode"), "mode must be equirect or window");
  if (!(s.fov > 0 && s.fov < kPi)) bad(origin("fov"), "fov must be in (0, pi)");
  if (s.colormap != "viridis" && s.colormap != "gray") bad(origin("colormap"), "colormap must be viridis or gray");
  if (!s.auto_range && !(s.vmax > s.vmin)) bad(origin("vmax"), "vmax must exceed vmin");
  if (s.time > s.T) bad(origin("time"), "time must not exceed T");
  if (s.n_list.empty()) bad(origin("n_list"), "n_list is empty");
  for (int n : s.n_list)
    if (n < 8) bad(origin("n_list"), "quadrature sizes must be at least 8");
  if (s.grid < 1 || s.grid > 20000) bad(origin("grid"), "grid must be in [1, 20000]");
  for (int st : s.strides)
    if (st < 0) bad(origin("strides"), "strides must be non-negative");
  if (command == "mesh" && !s.out.empty() && s.k_min != s.k_max) bad(origin("out"), "mesh export needs a single k");
  if (command == "render" && s.image.empty() && s.values.empty())
    bad(origin("image"), "render needs an image or values output");
  return s;
}

MapChain obtain_chain(const RunSpec& spec, double t, std::ostream& log) {
  if (!spec.input.empty()) {
    std::ifstream f(spec.input);
    if (!f) throw Error(ErrorKind::Io, "cannot read chain '" + spec.input + "'");
    return read_chain(f);
  }
  if (spec.test == "none" || t == 0) return MapChain{};
  const auto r = run_case(spec, case_of(spec), spec.k_max, t, spec.remap_stride, nullptr);
  log << "# ran " << spec.test << " k=" << spec.k_max << " steps=" << r.steps << " t=" << t << " in "
      << fmt("%.2f", r.walltime) << " s\n";
  return r.chain;
}

void cmd_mesh(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  out << "k,Nv,Ntri,h,seconds\n";
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto mesh = SphericalTriangulation::icosahedral(k);
    const double secs = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d,%zu,%zu,%.6f,%.3f\n", k, mesh.num_vertices(), mesh.num_triangles(),
                  mesh.max_edge_length(), secs);
    out << buf;
    if (!spec.out.empty()) {
      std::ofstream f(spec.out);
      if (!f) throw Error(ErrorKind::Io, "cannot write '" + spec.out + "'");
      write_mesh_text(f, mesh);
      log << "# wrote " << spec.out << "\n";
    }
  }
}

void cmd_converge(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  Sink sink(spec.out, out);
  *sink << csv_header() << "\n";
  const auto tc = case_of(spec);
  std::vector<double> hs, linf, l1, dens;
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    const auto r = run_case(spec, tc, k, spec.T, spec.remap_stride, nullptr);
    const auto rep = measure(spec, tc, r, k);
    *sink << to_csv(rep) << "\n" << std::flush;
    hs.push_back(r.chain.submaps()[0].geometry().mesh().max_edge_length());
    linf.push_back(rep.linf);
    l1.push_back(rep.l1);
    dens.push_back(rep.density);
  }
  log_slope(log, "linf", hs, linf);
  log_slope(log, "l1", hs, l1);
  log_slope(log, "density", hs, dens);
}

void cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const auto tc = case_of(spec);
  const auto r = run_case(spec, tc, spec.k_max, spec.T, spec.remap_stride, &log);
  if (!spec.chain.empty()) {
    std::ofstream f(spec.chain);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + spec.chain + "'");
    write_chain(f, r.chain);
    log << "# wrote " << spec.chain << "\n";
  }
  Sink sink(spec.out, out);
  *sink << csv_header() << "\n" << to_csv(measure(spec, tc, r, spec.k_max)) << "\n";
}

void cmd_sample(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const double t = spec.time < 0 ? spec.T : spec.time;
  const auto chain = obtain_chain(spec, t, log);
  const auto pts = sample_sphere(spec.samples, spec.seed);
  const auto phi = tracer_of(spec);
  const auto values = pullback_tracer(chain, phi, pts);
  const auto density = pullback_density(chain, phi, pts);
  Sink sink(spec.out, out);
  *sink << "x,y,z,value,density\n";
  char buf[160];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", pts[i].x(), pts[i].y(), pts[i].z(), values[i],
                  density[i]);
    *sink << buf;
  }
}

std::vector<UnitVec3> render_points(const RunSpec& spec) {
  const int W = spec.width, H = spec.height;
  std::vector<UnitVec3> pts(static_cast<std::size_t>(W) * H);
  if (spec.mode == "equirect") {
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i)
        pts[static_cast<std::size_t>(j) * W + i] = sph_to_cart({2 * kPi * (i + 0.5) / W, kPi * (j + 0.5) / H});
    return pts;
  }
  // gnomonic window about the centre, fov across the image width
  const auto c = sph_to_cart({spec.center_lon, spec.center_colat});
  const auto fr = tangent_frame(c);
  const double half = std::tan(spec.fov / 2);
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < W; ++i) {
      const double x = (2 * (i + 0.5) / W - 1) * half;
      const double y = (1 - 2 * (j + 0.5) / H) * half * H / W;
      pts[static_cast<std::size_t>(j) * W + i] = UnitVec3::project(c.vec() + x * fr.g1 + y * fr.g2);
    }
  return pts;
}

Grid render_grid(const RunSpec& spec, const MapChain& chain) {
  Grid g{spec.width, spec.height, {}};
  g.values = pullback_tracer(chain, tracer_of(spec), render_points(spec));
  return g;
}

void cmd_render(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  (void)out;
  const double t = spec.time < 0 ? spec.T : spec.time;
  const auto chain = obtain_chain(spec, t, log);
  const Grid g = render_grid(spec, chain);
  double lo = spec.vmin, hi = spec.vmax;
  if (spec.auto_range) {
    lo = *std::min_element(g.values.begin(), g.values.end());
    hi = *std::max_element(g.values.begin(), g.values.end());
  }
  if (!spec.image.empty()) {
    if (spec.colormap == "gray")
      write_pgm(spec.image, g, lo, hi);
    else
      write_ppm(spec.image, g, lo, hi);
    log << "# wrote " << spec.image << "\n";
  }
  if (!spec.values.empty()) {
    write_grid_csv(spec.values, g);
    log << "# wrote " << spec.values << "\n";
  }
  log << "# range " << fmt("%.6g", lo) << " " << fmt("%.6g", hi) << "\n";
}

void cmd_mixing(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const auto chain = obtain_chain(spec, spec.T / 2, log);
  const int N = spec.grid;
  std::vector<UnitVec3> pts;
  pts.reserve(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) pts.push_back(sph_to_cart({2 * kPi * i / N, kPi * (j + 0.5) / N}));
  const auto q1 = pullback_tracer(chain, correlated_q1(), pts);
  const auto q2 = pullback_tracer(chain, correlated_q2(), pts);
  Sink sink(spec.out, out);
  *sink << "q1,q2\n";
  double worst = 0;
  char buf[80];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    worst = std::max(worst, std::abs(q2[i] - correlated_relation(q1[i])));
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", q1[i], q2[i]);
    *sink << buf;
  }
  log << "# max_relation_error " << fmt("%.3e", worst) << "\n";
  if (!(worst <= 1e-13)) throw Error(ErrorKind::NumericalFailure, "tracer relation violated: " + fmt("%.3e", worst));
}

void cmd_mass(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  const auto chain = obtain_chain(spec, spec.T, log);
  Sink sink(spec.out, out);
  *sink << "N,mass,abs_error\n";
  char buf[96];
  for (int N : spec.n_list) {
    const double m = mass_integral(chain, N);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.6e\n", N, m, std::abs(1 - m));
    *sink << buf;
  }
}

void cmd_remap_study(const RunSpec& spec, std::ostream& out, std::ostream& log) {
  Sink sink(spec.out, out);
  *sink << csv_header() << "\n";
  const auto tc = case_of(spec);
  for (int stride : spec.strides) {
    const auto r = run_case(spec, tc, spec.k_max, spec.T, stride, nullptr);
    *sink << to_csv(measure(spec, tc, r, spec.k_max)) << "\n" << std::flush;
    log << "# stride " << stride << " submaps " << r.chain.size() << "\n";
  }
}

}  // namespace cmm::cli
