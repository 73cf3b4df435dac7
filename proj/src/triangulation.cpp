#include "cmm/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "cmm/error.hpp"

namespace cmm {

namespace {

constexpr double kContainTol = 1e-12;

std::array<Vec3, 3> inverse_rows(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  const double d = det3(v1, v2, v3);
  if (!(std::abs(d) >= 1e-12)) throw Error(ErrorKind::DegenerateTriangle, "vertices are linearly dependent");
  return {cross(v2, v3) / d, cross(v3, v1) / d, cross(v1, v2) / d};
}

double min3(const std::array<double, 3>& b) { return std::min({b[0], b[1], b[2]}); }

int argmin3(const std::array<double, 3>& b) {
  int i = 0;
  if (b[1] < b[i]) i = 1;
  if (b[2] < b[i]) i = 2;
  return i;
}

std::vector<UnitVec3> icosahedron_vertices() {
  const double phi = 0.5 * (1 + std::sqrt(5.0));
  std::vector<UnitVec3> v;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0}) {
      v.push_back(UnitVec3::project({0, s1, s2 * phi}));
      v.push_back(UnitVec3::project({s1, s2 * phi, 0}));
      v.push_back(UnitVec3::project({s2 * phi, 0, s1}));
    }
  return v;
}

std::vector<std::array<int, 3>> icosahedron_faces(const std::vector<UnitVec3>& v) {
  // Faces are the vertex triples at mutual minimal distance.
  const double edge_dot = 1.0 / std::sqrt(5.0);
  auto adjacent = [&](int i, int j) { return std::abs(dot(v[i], v[j]) - edge_dot) < 1e-9; };
  std::vector<std::array<int, 3>> faces;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) faces.push_back({i, j, k});
  return faces;
}

}  // namespace

std::array<double, 3> spherical_barycentric(const Vec3& v1, const Vec3& v2, const Vec3& v3, const Vec3& p) {
  const auto rows = inverse_rows(v1, v2, v3);
  return {dot(rows[0], p), dot(rows[1], p), dot(rows[2], p)};
}

SphericalTriangulation::SphericalTriangulation(std::vector<UnitVec3> vertices,
                                               std::vector<std::array<int, 3>> triangles, int level)
    : level_(level), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = static_cast<int>(vertices_.size());
  const int nt = static_cast<int>(triangles_.size());
  if (nt == 0) throw Error(ErrorKind::InvalidArgument, "triangulation has no triangles");
  for (auto& t : triangles_) {
    for (int c : t)
      if (c < 0 || c >= nv) throw Error(ErrorKind::InvalidArgument, "triangle references a missing vertex");
    if (det3(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]) < 0) std::swap(t[1], t[2]);
  }

  inverse_rows_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& c = triangles_[t];
    inverse_rows_[t] = inverse_rows(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]);
  }

  // Edge opposite corner i is (c[i+1], c[i+2]).
  std::map<std::pair<int, int>, int> edge_ids;
  neighbors_.assign(nt, {-1, -1, -1});
  triangle_edges_.assign(nt, {-1, -1, -1});
  for (int t = 0; t < nt; ++t) {
    const auto& c = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = c[(i + 1) % 3], b = c[(i + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_triangles_.push_back({t, -1});
      } else {
        auto& owners = edge_triangles_[it->second];
        if (owners[1] != -1) throw Error(ErrorKind::InvalidArgument, "edge shared by more than two triangles");
        owners[1] = t;
      }
      triangle_edges_[t][i] = it->second;
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto owners = edge_triangles_[e];
    if (owners[1] == -1) throw Error(ErrorKind::InvalidArgument, "boundary edge: the triangulation is not closed");
    for (int side = 0; side < 2; ++side) {
      const int t = owners[side];
      for (int i = 0; i < 3; ++i)
        if (triangle_edges_[t][i] == static_cast<int>(e)) neighbors_[t][i] = owners[1 - side];
    }
  }

  frames_.reserve(nv);
  for (const auto& v : vertices_) frames_.push_back(tangent_frame(v));

  build_index();
}

SphericalTriangulation SphericalTriangulation::icosahedral(int k) {
  if (k < 0 || k > kMaxLevel)
    throw Error(ErrorKind::RefinementTooDeep, "refinement level must be in [0, " + std::to_string(kMaxLevel) + "]");
  std::vector<UnitVec3> verts = icosahedron_vertices();
  std::vector<std::array<int, 3>> tris = icosahedron_faces(verts);
  for (auto& t : tris)
    if (det3(verts[t[0]], verts[t[1]], verts[t[2]]) < 0) std::swap(t[1], t[2]);

  for (int level = 0; level < k; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find({key.first, key.second});
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(verts.size());
      verts.push_back(UnitVec3::project(verts[key.first].vec() + verts[key.second].vec()));
      midpoint.emplace(std::pair{key.first, key.second}, id);
      return id;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(4 * tris.size());
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      refined.push_back({t[0], ab, ca});
      refined.push_back({ab, t[1], bc});
      refined.push_back({ca, bc, t[2]});
      refined.push_back({ab, bc, ca});
    }
    tris = std::move(refined);
  }
  return SphericalTriangulation(std::move(verts), std::move(tris), k);
}

std::array<double, 3> SphericalTriangulation::barycentric(int t, const Vec3& p) const {
  const auto& r = inverse_rows_[t];
  return {dot(r[0], p), dot(r[1], p), dot(r[2], p)};
}

SphericalTriangulation::MacroHit SphericalTriangulation::walk(int t, const Vec3& p) const {
  const std::size_t max_steps = 4 * triangles_.size() + 8;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const auto b = barycentric(t, p);
    const int worst = argmin3(b);
    if (b[worst] >= -kContainTol) {
      // Resolve ownership on shared edges/vertices: smallest index among all
      // triangles containing p that are reachable across near-zero edges.
      MacroHit best{t, b};
      std::array<int, 32> seen{};
      std::size_t n_seen = 0, head = 0;
      seen[n_seen++] = t;
      while (head < n_seen) {
        const int u = seen[head++];
        const auto bu = u == t ? b : barycentric(u, p);
        for (int i = 0; i < 3; ++i) {
          if (bu[i] > kContainTol) continue;
          const int nb = neighbors_[u][i];
          if (std::find(seen.begin(), seen.begin() + n_seen, nb) != seen.begin() + n_seen) continue;
          const auto bn = barycentric(nb, p);
          if (min3(bn) < -kContainTol || n_seen == seen.size()) continue;
          seen[n_seen++] = nb;
          if (nb < best.triangle) best = {nb, bn};
        }
      }
      return best;
    }
    t = neighbors_[t][worst];
  }
  throw Error(ErrorKind::LocationFailure, "triangle walk did not terminate");
}

namespace {

struct CubeCell {
  int face, i, j;
};

CubeCell cube_cell(const Vec3& p, int res) {
  const double ax = std::abs(p.x), ay = std::abs(p.y), az = std::abs(p.z);
  int a = 0;
  if (ay > ax && ay >= az) a = 1;
  else if (az > ax && az > ay) a = 2;
  const double major = std::abs(p[a]);
  const int face = 2 * a + (p[a] < 0 ? 1 : 0);
  const double u = p[(a + 1) % 3] / major, v = p[(a + 2) % 3] / major;
  auto cell = [res](double w) { return std::clamp(static_cast<int>((w + 1) * 0.5 * res), 0, res - 1); };
  return {face, cell(u), cell(v)};
}

}  // namespace

int SphericalTriangulation::index_seed(const Vec3& p) const {
  const auto c = cube_cell(p, index_res_);
  return index_seed_[(c.face * index_res_ + c.i) * index_res_ + c.j];
}

void SphericalTriangulation::build_index() {
  index_res_ = std::max(1, static_cast<int>(std::sqrt(triangles_.size() / 12.0)) + 1);
  index_seed_.assign(6 * index_res_ * index_res_, 0);
  int seed = 0;
  for (int face = 0; face < 6; ++face) {
    const int a = face / 2;
    const double sign = face % 2 ? -1.0 : 1.0;
    for (int i = 0; i < index_res_; ++i)
      for (int jj = 0; jj < index_res_; ++jj) {
        const int j = i % 2 ? index_res_ - 1 - jj : jj;  // serpentine keeps walks short
        Vec3 c;
        c[a] = sign;
        c[(a + 1) % 3] = -1 + (i + 0.5) * 2.0 / index_res_;
        c[(a + 2) % 3] = -1 + (j + 0.5) * 2.0 / index_res_;
        seed = walk(seed, UnitVec3::project(c)).triangle;
        index_seed_[(face * index_res_ + i) * index_res_ + j] = seed;
      }
  }
}

SphericalTriangulation::MacroHit SphericalTriangulation::find_triangle(const Vec3& p) const {
  return walk(index_seed(p), p);
}

double SphericalTriangulation::max_edge_length() const {
  double h = 0;
  for (const auto& e : edges_) h = std::max(h, great_circle_distance(vertices_[e[0]], vertices_[e[1]]));
  return h;
}

double SphericalTriangulation::triangle_area(int t) const {
  const auto& c = triangles_[t];
  return spherical_triangle_area(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]);
}

// --- Powell-Sabin split ---------------------------------------------------

PowellSabinGeometry::PowellSabinGeometry(std::shared_ptr<const SphericalTriangulation> mesh)
    : mesh_(std::move(mesh)) {
  const auto& m = *mesh_;
  const int nt = static_cast<int>(m.num_triangles());
  std::vector<UnitVec3> centers(nt);
  barycenter_weights_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& c = m.triangle(t);
    centers[t] = UnitVec3::project(m.vertex(c[0]).vec() + m.vertex(c[1]).vec() + m.vertex(c[2]).vec());
    barycenter_weights_[t] = m.barycentric(t, centers[t]);
  }

  edge_points_.resize(m.num_edges());
  edge_weights_.resize(m.num_edges());
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge(static_cast<int>(e));
    const auto [t0, t1] = m.edge_triangles(static_cast<int>(e));
    const Vec3& va = m.vertex(a);
    const Vec3& vb = m.vertex(b);
    Vec3 d = cross(cross(centers[t0], centers[t1]), cross(va, vb));
    if (dot(d, va + vb) < 0) d = -d;
    const UnitVec3 p = UnitVec3::project(d);
    const double c = dot(va, vb), pa = dot(p, va), pb = dot(p, vb);
    const double den = 1 - c * c;
    const double r = (pa - c * pb) / den, s = (pb - c * pa) / den;
    if (!(r > 0 && s > 0))
      throw Error(ErrorKind::DegenerateTriangle, "split point falls outside its edge; mesh too distorted for the PS split");
    edge_points_[e] = p;
    edge_weights_[e] = {r, s};
  }

  points_.resize(nt);
  sector_normals_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& c = m.triangle(t);
    auto& pts = points_[t];
    pts[0] = m.vertex(c[0]);
    pts[1] = m.vertex(c[1]);
    pts[2] = m.vertex(c[2]);
    pts[3] = edge_points_[m.triangle_edge(t, 2)];  // v1-v2
    pts[4] = edge_points_[m.triangle_edge(t, 0)];  // v2-v3
    pts[5] = edge_points_[m.triangle_edge(t, 1)];  // v3-v1
    pts[6] = centers[t];
    constexpr std::array<int, 6> ring{0, 3, 1, 4, 2, 5};
    for (int k = 0; k < 6; ++k) sector_normals_[t][k] = cross(pts[6], pts[ring[k]]);
  }
}

std::array<double, 2> PowellSabinGeometry::edge_weights(int t, int j) const {
  constexpr std::array<int, 3> opposite{2, 0, 1};
  const int e = mesh_->triangle_edge(t, opposite[j]);
  const auto& w = edge_weights_[e];
  const int first = mesh_->triangle(t)[j];
  return mesh_->edge(e)[0] == first ? w : std::array<double, 2>{w[1], w[0]};
}

std::array<Vec3, 3> PowellSabinGeometry::sub_inverse(int macro, int sub) const {
  const auto& pts = points_[macro];
  const auto& s = kSubTriangles[sub];
  return inverse_rows(pts[s[0]], pts[s[1]], pts[s[2]]);
}

Location PowellSabinGeometry::locate_in(int macro, const Vec3& p) const {
  const auto& n = sector_normals_[macro];
  std::array<double, 6> side;
  for (int k = 0; k < 6; ++k) side[k] = dot(n[k], p);
  int sub = -1;
  for (int k = 0; k < 6; ++k)
    if (side[k] >= 0 && side[(k + 1) % 6] < 0) {
      sub = k;
      break;
    }
  Location loc{macro, 0, {}};
  if (sub >= 0) {
    loc.sub = sub;
    const auto rows = sub_inverse(macro, sub);
    loc.bary = {dot(rows[0], p), dot(rows[1], p), dot(rows[2], p)};
    return loc;
  }
  // Degenerate sign pattern (p at v4 to rounding): best-contained sub-triangle.
  double best = -1e300;
  for (int k = 0; k < 6; ++k) {
    const auto rows = sub_inverse(macro, k);
    const std::array<double, 3> b{dot(rows[0], p), dot(rows[1], p), dot(rows[2], p)};
    if (min3(b) > best) {
      best = min3(b);
      loc.sub = k;
      loc.bary = b;
    }
  }
  return loc;
}

Location PowellSabinGeometry::locate(const Vec3& p) const {
  return locate_in(mesh_->find_triangle(p).triangle, p);
}

// --- text I/O -------------------------------------------------------------

void write_mesh_text(std::ostream& os, const SphericalTriangulation& mesh) {
  os << "# cmm-mesh " << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  char buf[96];
  for (const auto& v : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    os << buf;
  }
  for (const auto& t : mesh.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

SphericalTriangulation read_mesh_text(std::istream& is) {
  std::string line;
  std::size_t nv = 0, nt = 0;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "empty mesh stream");
  {
    std::istringstream head(line);
    std::string hash, tag;
    if (!(head >> hash >> tag >> nv >> nt) || hash != "#" || tag != "cmm-mesh")
      throw Error(ErrorKind::Io, "missing '# cmm-mesh Nv Nt' header");
  }
  std::vector<UnitVec3> verts;
  verts.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Vec3 v;
    if (!(is >> v.x >> v.y >> v.z)) throw Error(ErrorKind::Io, "truncated vertex list");
    verts.push_back(UnitVec3::project(v));
  }
  std::vector<std::array<int, 3>> tris(nt);
  for (auto& t : tris)
    if (!(is >> t[0] >> t[1] >> t[2])) throw Error(ErrorKind::Io, "truncated triangle list");
  return SphericalTriangulation(std::move(verts), std::move(tris));
}

}  // namespace cmm
