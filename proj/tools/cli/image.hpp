#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cmm::cli {

/// Row-major scalar image.
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * width + i]; }
};

/// Viridis-like colour for t in [0, 1] (clamped), from a small embedded table.
std::array<std::uint8_t, 3> viridis(double t);

/// Scales to [0, 1] with the given bounds; vmin == vmax maps everything to 0.
double normalize_value(double v, double vmin, double vmax);

/// Binary PGM (P5) or PPM (P6) through the colour table.
void write_pgm(const std::string& path, const Grid& g, double vmin, double vmax);
void write_ppm(const std::string& path, const Grid& g, double vmin, double vmax);

/// One line per image row, comma separated, full precision.
void write_grid_csv(const std::string& path, const Grid& g);

}  // namespace cmm::cli
