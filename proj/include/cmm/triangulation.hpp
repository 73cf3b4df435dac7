#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include "cmm/sphere_geom.hpp"

namespace cmm {

/// Conforming spherical triangulation with counterclockwise (seen from
/// outside) triangles, triangle adjacency, per-vertex tangent frames and a
/// point-location index.
class SphericalTriangulation {
 public:
  static constexpr int kMaxLevel = 10;

  /// Builds adjacency, frames and the location index. Triangles are
  /// reoriented to be counterclockwise. Throws InvalidArgument if some edge
  /// is not shared by exactly two triangles.
  SphericalTriangulation(std::vector<UnitVec3> vertices, std::vector<std::array<int, 3>> triangles,
                         int level = -1);

  /// k uniform midpoint refinements of the icosahedron.
  static SphericalTriangulation icosahedral(int k);

  int level() const { return level_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const UnitVec3& vertex(int i) const { return vertices_[i]; }
  const std::vector<UnitVec3>& vertices() const { return vertices_; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const TangentFrame& frame(int v) const { return frames_[v]; }

  /// Triangle across the edge opposite corner i of t.
  int neighbor(int t, int i) const { return neighbors_[t][i]; }
  /// Global index of the edge opposite corner i of t.
  int triangle_edge(int t, int i) const { return triangle_edges_[t][i]; }
  /// Edge endpoints, stored with a < b.
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  /// The two triangles sharing edge e, lower index first.
  const std::array<int, 2>& edge_triangles(int e) const { return edge_triangles_[e]; }

  /// Spherical barycentric coordinates of p with respect to triangle t
  /// (b1 v1 + b2 v2 + b3 v3 = p).
  std::array<double, 3> barycentric(int t, const Vec3& p) const;

  struct MacroHit {
    int triangle;
    std::array<double, 3> bary;
  };
  /// Containing triangle of p (all coordinates >= -1e-12). Points on shared
  /// edges or vertices go to the lowest-index containing triangle.
  MacroHit find_triangle(const Vec3& p) const;

  /// Largest edge arc length.
  double max_edge_length() const;
  double triangle_area(int t) const;

 private:
  MacroHit walk(int start, const Vec3& p) const;
  int index_seed(const Vec3& p) const;
  void build_index();

  int level_;
  std::vector<UnitVec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> neighbors_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 2>> edge_triangles_;
  std::vector<TangentFrame> frames_;
  // Rows of the inverse of [v1 v2 v3] per triangle.
  std::vector<std::array<Vec3, 3>> inverse_rows_;
  // Cube-map seed grid: 6 faces of index_res_ x index_res_ cells.
  int index_res_ = 1;
  std::vector<int> index_seed_;
};

/// Position of a point in the Powell-Sabin refinement: macro-triangle,
/// sub-triangle T1..T6 stored as 0..5, barycentric coordinates in the
/// sub-triangle.
struct Location {
  int macro = 0;
  int sub = 0;
  std::array<double, 3> bary{1, 0, 0};
};

/// Powell-Sabin split geometry of every macro-triangle.
///
/// Local point numbering per macro-triangle <v1, v2, v3>:
///   0 = v1, 1 = v2, 2 = v3, 3 = v12, 4 = v23, 5 = v13, 6 = v4.
/// v4 is the normalized vertex mean. The split point on an edge is where the
/// edge arc meets the great circle through the barycenters of the two
/// triangles sharing it; that placement is what makes the quadratic split
/// spline C1 across macro edges.
class PowellSabinGeometry {
 public:
  /// Sub-triangles in local point numbers:
  /// T1 = <v1,v12,v4>, T2 = <v2,v4,v12>, T3 = <v4,v2,v23>,
  /// T4 = <v23,v4,v3>, T5 = <v13,v4,v3>, T6 = <v4,v13,v1>.
  static constexpr std::array<std::array<int, 3>, 6> kSubTriangles{
      {{0, 3, 6}, {1, 6, 3}, {6, 1, 4}, {4, 6, 2}, {5, 6, 2}, {6, 5, 0}}};

  explicit PowellSabinGeometry(std::shared_ptr<const SphericalTriangulation> mesh);

  const SphericalTriangulation& mesh() const { return *mesh_; }
  const std::shared_ptr<const SphericalTriangulation>& mesh_ptr() const { return mesh_; }
  std::size_t num_triangles() const { return mesh_->num_triangles(); }

  const std::array<UnitVec3, 7>& points(int t) const { return points_[t]; }
  /// (r_j, s_j) with e_j = r_j v_j + s_j v_{j+1}: j = 0 -> v12, 1 -> v23, 2 -> v13.
  std::array<double, 2> edge_weights(int t, int j) const;
  /// (a1, a2, a3) with v4 = a1 v1 + a2 v2 + a3 v3.
  const std::array<double, 3>& barycenter_weights(int t) const { return barycenter_weights_[t]; }
  const UnitVec3& edge_point(int e) const { return edge_points_[e]; }
  /// Weights of the edge point relative to (edge.a, edge.b).
  const std::array<double, 2>& edge_point_weights(int e) const { return edge_weights_[e]; }

  Location locate(const Vec3& p) const;
  /// Sub-triangle and coordinates of p inside the given macro-triangle.
  Location locate_in(int macro, const Vec3& p) const;
  /// Rows of the inverse of the sub-triangle vertex matrix; bary(g) = rows . g.
  std::array<Vec3, 3> sub_inverse(int macro, int sub) const;

 private:
  std::shared_ptr<const SphericalTriangulation> mesh_;
  std::vector<std::array<UnitVec3, 7>> points_;
  std::vector<std::array<double, 3>> barycenter_weights_;
  std::vector<UnitVec3> edge_points_;
  std::vector<std::array<double, 2>> edge_weights_;
  // v4 x w_k for the ring w = v1, v12, v2, v23, v3, v13.
  std::vector<std::array<Vec3, 6>> sector_normals_;
};

/// Spherical barycentric coordinates of p relative to (v1, v2, v3).
/// Throws DegenerateTriangle when |det[v1 v2 v3]| < 1e-12.
std::array<double, 3> spherical_barycentric(const Vec3& v1, const Vec3& v2, const Vec3& v3, const Vec3& p);

/// Plain-text mesh: "# cmm-mesh Nv Nt", Nv lines "x y z", Nt lines "i j k".
void write_mesh_text(std::ostream& os, const SphericalTriangulation& mesh);
SphericalTriangulation read_mesh_text(std::istream& is);

}  // namespace cmm
