#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "image.hpp"
#include "cmm/map_field.hpp"

namespace cmm::cli {

/// Everything a subcommand needs, validated before dispatch.
struct RunSpec {
  std::string command;
  std::string test;  // "none" stands for the empty chain
  double alpha = 0;
  double T = 1;
  std::string tracer;
  std::uint64_t seed = 42;
  int k_min = 4;
  int k_max = 4;
  int steps = 0;  // 0: 2^k + 10 over [0, T]
  int remap_stride = 0;
  double epsilon = 1e-5;
  bool allow_deep = false;
  std::string out, image, values, chain, input;
  std::size_t samples = 1000000;
  int mass_n = 64;
  int width = 1000, height = 500;
  std::string mode = "equirect";
  double center_lon = 0, center_colat = 1.5707963267948966, fov = 0.25;
  double time = -1;  // negative: T
  std::string colormap = "viridis";
  double vmin = 0, vmax = 0;
  bool auto_range = true;
  std::vector<int> n_list{32, 64, 128};
  int grid = 200;
  std::vector<int> strides{0, 25, 10};
};

/// Command defaults overridden by the settings, then validated. Throws
/// Error(Config) or Error(RefinementTooDeep) with context.
RunSpec make_spec(const std::string& command, const Settings& settings);

/// Subcommands write their main output to spec.out (or `out` when empty)
/// and notes to `log`.
void cmd_mesh(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_converge(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_sample(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_render(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_mixing(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_mass(const RunSpec& spec, std::ostream& out, std::ostream& log);
void cmd_remap_study(const RunSpec& spec, std::ostream& out, std::ostream& log);

/// Chain for sample/render/mass/mixing: read from spec.input, empty for test
/// "none", else a fresh run of the test at k_max up to time t.
MapChain obtain_chain(const RunSpec& spec, double t, std::ostream& log);

/// Sample points of the render grid, row-major from the top-left pixel.
std::vector<UnitVec3> render_points(const RunSpec& spec);

/// Pulled-back tracer on the render grid.
Grid render_grid(const RunSpec& spec, const MapChain& chain);

}  // namespace cmm::cli
