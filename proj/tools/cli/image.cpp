#include "image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cmm/error.hpp"

namespace cmm::cli {

namespace {

// viridis sampled at 11 even stops
constexpr int kStops = 11;
constexpr std::array<std::array<double, 3>, kStops> kViridis{{
    {0.267004, 0.004874, 0.329415}, {0.282623, 0.140926, 0.457517}, {0.253935, 0.265254, 0.529983},
    {0.206756, 0.371758, 0.553117}, {0.163625, 0.471133, 0.558148}, {0.127568, 0.566949, 0.550556},
    {0.134692, 0.658636, 0.517649}, {0.266941, 0.748751, 0.440573}, {0.477504, 0.821444, 0.318195},
    {0.741388, 0.873449, 0.149561}, {0.993248, 0.906157, 0.143936},
}};

std::ofstream open_binary(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  return f;
}

}  // namespace

std::array<std::uint8_t, 3> viridis(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * (kStops - 1);
  const int i = std::min(static_cast<int>(t), kStops - 2);
  const double f = t - i;
  std::array<std::uint8_t, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    const double v = (1 - f) * kViridis[i][c] + f * kViridis[i + 1][c];
    rgb[c] = static_cast<std::uint8_t>(std::lround(255 * v));
  }
  return rgb;
}

double normalize_value(double v, double vmin, double vmax) {
  if (!(vmax > vmin)) return 0;
  return std::clamp((v - vmin) / (vmax - vmin), 0.0, 1.0);
}

void write_pgm(const std::string& path, const Grid& g, double vmin, double vmax) {
  auto f = open_binary(path);
  f << "P5\n" << g.width << " " << g.height << "\n255\n";
  for (double v : g.values) f.put(static_cast<char>(std::lround(255 * normalize_value(v, vmin, vmax))));
  if (!f) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

void write_ppm(const std::string& path, const Grid& g, double vmin, double vmax) {
  auto f = open_binary(path);
  f << "P6\n" << g.width << " " << g.height << "\n255\n";
  for (double v : g.values) {
    const auto rgb = viridis(normalize_value(v, vmin, vmax));
    f.write(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  if (!f) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

void write_grid_csv(const std::string& path, const Grid& g) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i) std::fprintf(f, "%.17g%c", g.at(i, j), i + 1 == g.width ? '\n' : ',');
  const bool ok = std::fclose(f) == 0;
  if (!ok) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace cmm::cli
