#pragma once

#include <array>
#include <cmath>

namespace kcbs {

/// Tolerance used for unit-length and orthogonality preconditions.
inline constexpr double kGeometryTol = 1e-12;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }

  bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

bool is_finite(const Vec3& v);

/// A unit 3-vector: a measurement direction / optical mode.
///
/// Construction checks |v| = 1 within kGeometryTol and throws DomainError
/// otherwise. Use Direction::normalized() to rescale an arbitrary nonzero vector.
class Direction {
 public:
  explicit Direction(const Vec3& v);

  static Direction normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

  Direction operator-() const { return Direction(-v_); }

 private:
  Vec3 v_;
};

inline double dot(const Direction& a, const Direction& b) { return dot(a.vec(), b.vec()); }
inline double dot(const Direction& a, const Vec3& b) { return dot(a.vec(), b); }
inline Vec3 cross(const Direction& a, const Direction& b) { return cross(a.vec(), b.vec()); }

/// The five KCBS directions and their common symmetry axis.
///
/// Labels are 1-based and cyclic, as in the usual pentagram picture:
/// direction k is orthogonal to k-1 and k+1 (mod 5). at() accepts any
/// integer label and reduces it modulo 5.
struct Pentagram {
  std::array<Direction, 5> dirs;
  Direction axis;

  const Direction& at(int label) const;
};

/// Directions at azimuth 4*pi*k/5 with a common polar angle chosen so that
/// neighbours are orthogonal; axis = (0, 0, 1).
Pentagram build_pentagram();

/// Rodrigues rotation of x by theta radians about the unit axis v.
Vec3 rotate_about(const Direction& v, double theta, const Vec3& x);

/// normalize(i x j): the mode orthogonal to both members of an orthogonal pair.
/// Throws DomainError when |i . j| > kGeometryTol.
Direction third_direction(const Direction& i, const Direction& j);

}  // namespace kcbs
