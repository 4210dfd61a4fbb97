#pragma once

#include <array>
#include <cmath>
#include <cstddef>

// Small fixed-size linear algebra for points in the screen plane (R^1 or R^2,
// always stored as 2-vectors with the unused coordinate equal to zero) and for
// field points in the ambient space R^{n+1} (stored as 3-vectors).

namespace fractbem {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<double, 4>;  // row-major 2x2

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }

inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(Vec2 a) { return std::hypot(a[0], a[1]); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec3 operator-(Vec3 a, Vec3 b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline double norm(Vec3 a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }

inline constexpr Mat2 kIdentity2{1.0, 0.0, 0.0, 1.0};

inline Vec2 mat_apply(const Mat2& m, Vec2 v) {
  return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 transpose(const Mat2& m) { return {m[0], m[2], m[1], m[3]}; }

inline Mat2 rotation(double angle_rad) {
  const double c = std::cos(angle_rad), s = std::sin(angle_rad);
  return {c, -s, s, c};
}

// max |(M M^T - I)_{ij}|, used to validate orthogonal parts
inline double orthogonality_defect(const Mat2& m) {
  const Mat2 p = matmul(m, transpose(m));
  double d = 0.0;
  d = std::max(d, std::abs(p[0] - 1.0));
  d = std::max(d, std::abs(p[1]));
  d = std::max(d, std::abs(p[2]));
  d = std::max(d, std::abs(p[3] - 1.0));
  return d;
}

}  // namespace fractbem
