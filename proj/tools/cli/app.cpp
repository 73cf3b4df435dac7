#include "app.hpp"

#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "cmm/error.hpp"
#include "commands.hpp"

namespace cmm::cli {

namespace {

struct Flag {
  const char* key;
  const char* name;
  const char* help;
};

// Flags shared by every subcommand; each maps onto a config key.
constexpr Flag kFlags[] = {
    {"test", "--test", "test case: sbr, deform, vortex_static, vortex_moving, compressible (none: empty chain)"},
    {"alpha", "--alpha", "rotation axis inclination"},
    {"T", "--T", "final time / period"},
    {"tracer", "--tracer", "cosine_bells, zalesak, rsph, q1, q2, mandelbrot, vortex"},
    {"seed", "--seed", "random seed for tracers and sampling"},
    {"k", "-k,--k", "refinement level or range a..b"},
    {"steps", "--steps", "time steps over [0, T] (default 2^k + 10)"},
    {"remap_stride", "--remap-stride", "steps between remaps (0: never)"},
    {"epsilon", "--epsilon", "stencil offset"},
    {"out", "-o,--out", "main output file (default stdout)"},
    {"image", "--image", "image output (.ppm or .pgm)"},
    {"values", "--values", "raw grid values CSV"},
    {"chain", "--chain", "write the map chain here"},
    {"input", "--input", "read a map chain instead of running"},
    {"samples", "--samples", "random sample count for error norms"},
    {"mass_n", "--mass-n", "quadrature grid for the mass column"},
    {"width", "--width", "image width"},
    {"height", "--height", "image height"},
    {"mode", "--mode", "equirect or window"},
    {"center_lon", "--center-lon", "window centre longitude"},
    {"center_colat", "--center-colat", "window centre colatitude"},
    {"fov", "--fov", "window angular width"},
    {"time", "--time", "render/sample time"},
    {"colormap", "--colormap", "viridis (PPM) or gray (PGM)"},
    {"vmin", "--vmin", "colour range minimum"},
    {"vmax", "--vmax", "colour range maximum"},
    {"n_list", "--n-list", "comma separated quadrature sizes"},
    {"grid", "--grid", "mixing grid size per axis"},
    {"strides", "--strides", "comma separated remap strides"},
};

const std::map<std::string, std::function<void(const RunSpec&, std::ostream&, std::ostream&)>> kCommands{
    {"mesh", cmd_mesh},     {"converge", cmd_converge}, {"run", cmd_run},   {"sample", cmd_sample},
    {"render", cmd_render}, {"mixing", cmd_mixing},     {"mass", cmd_mass}, {"remap-study", cmd_remap_study},
};

const std::map<std::string, std::string> kAbout{
    {"mesh", "icosahedral mesh table and text export"},
    {"converge", "error table over a range of k"},
    {"run", "single run; optional chain output"},
    {"sample", "pulled-back tracer at random points"},
    {"render", "tracer image on an equirectangular or window grid"},
    {"mixing", "correlated tracer scatter at T/2"},
    {"mass", "mass error against quadrature size"},
    {"remap-study", "errors for several remap strides"},
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalFailure:
    case ErrorKind::ZeroVector:
    case ErrorKind::LocationFailure:
    case ErrorKind::DegenerateTriangle:
    case ErrorKind::OutOfChart:
    case ErrorKind::NonTangentDirection:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic mapping transport on the sphere"};
  app.require_subcommand(1);
  struct Bound {
    CLI::App* sub;
    std::string config;
    bool allow_deep = false;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Bound> subs;
  for (const auto& [name, about] : kAbout) {
    auto& b = subs[name];
    b.sub = app.add_subcommand(name, about);
    b.sub->add_option("-c,--config", b.config, "config file (key = value, [sections])");
    b.sub->add_flag("--allow-deep", b.allow_deep, "permit k > 6");
    for (const auto& f : kFlags) b.options[f.key] = b.sub->add_option(f.name, b.values[f.key], f.help);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto& [name, b] : subs) {
    if (!b.sub->parsed()) continue;
    try {
      Settings settings;
      if (!b.config.empty()) settings = read_config_file(b.config);
      Settings flags;
      for (const auto& f : kFlags)
        if (b.options[f.key]->count() > 0) {
          const std::string n = f.name;
          flags[f.key] = {b.values[f.key], n.substr(n.find_last_of(',') + 1)};
        }
      if (b.allow_deep) flags["allow_deep"] = {"true", "--allow-deep"};
      merge(settings, flags);
      const RunSpec spec = make_spec(name, settings);
      if (spec.k_max > 6) err << "warning: k = " << spec.k_max << " needs a lot of memory and time\n";
      kCommands.at(name)(spec, out, err);
      return 0;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}

}  // namespace cmm::cli
