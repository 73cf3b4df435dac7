#pragma once

#include <array>
#include <cmath>

namespace cmm {

/// Plain Cartesian 3-vector in the ambient space of the sphere.
struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// det[a b c] = a . (b x c)
constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

inline constexpr Vec3 kE1{1, 0, 0};
inline constexpr Vec3 kE2{0, 1, 0};
inline constexpr Vec3 kE3{0, 0, 1};

/// Row-major 3x3 matrix; used for rigid rotations of the sphere.
struct Mat3 {
  std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static constexpr Mat3 identity() { return {}; }
  static Mat3 rotation_x(double angle);
  static Mat3 rotation_y(double angle);
  static Mat3 rotation_z(double angle);

  constexpr double operator()(int r, int c) const { return a[3 * r + c]; }
  constexpr double& operator()(int r, int c) { return a[3 * r + c]; }

  constexpr Vec3 operator*(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z, a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }
  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  constexpr Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  constexpr double determinant() const {
    return det3({a[0], a[3], a[6]}, {a[1], a[4], a[7]}, {a[2], a[5], a[8]});
  }
};

inline Mat3 Mat3::rotation_x(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}
inline Mat3 Mat3::rotation_y(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}
inline Mat3 Mat3::rotation_z(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

}  // namespace cmm
