#include "kcbs/geometry.hpp"

#include <numbers>
#include <sstream>
#include <string>

#include "kcbs/errors.hpp"

namespace kcbs {

namespace {

std::string describe(const Vec3& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
  return os.str();
}

}  // namespace

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

Direction::Direction(const Vec3& v) : v_(v) {
  if (!is_finite(v)) throw DomainError("direction has non-finite components " + describe(v));
  if (std::abs(norm(v) - 1.0) > kGeometryTol) {
    throw DomainError("direction is not unit length: " + describe(v));
  }
}

Direction Direction::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!std::isfinite(n) || n == 0.0) throw DomainError("cannot normalize " + describe(v));
  return Direction(v / n);
}

const Direction& Pentagram::at(int label) const {
  const int k = ((label - 1) % 5 + 5) % 5;
  return dirs[static_cast<std::size_t>(k)];
}

Pentagram build_pentagram() {
  using std::numbers::pi;
  const double cp = std::cos(pi / 5.0);
  const double cos_polar = std::sqrt(cp / (1.0 + cp));
  const double sin_polar = std::sqrt(1.0 / (1.0 + cp));

  auto make = [&](int label) {
    const double phi = 4.0 * pi * label / 5.0;
    return Direction::normalized({sin_polar * std::cos(phi), sin_polar * std::sin(phi), cos_polar});
  };
  return Pentagram{{make(1), make(2), make(3), make(4), make(5)}, Direction({0.0, 0.0, 1.0})};
}

Vec3 rotate_about(const Direction& v, double theta, const Vec3& x) {
  const Vec3& a = v.vec();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return x * c + cross(a, x) * s + a * (dot(a, x) * (1.0 - c));
}

Direction third_direction(const Direction& i, const Direction& j) {
  const double d = dot(i, j);
  if (std::abs(d) > kGeometryTol) {
    std::ostringstream os;
    os.precision(17);
    os << "third_direction requires orthogonal inputs, got i.j = " << d;
    throw DomainError(os.str());
  }
  return Direction::normalized(cross(i, j));
}

}  // namespace kcbs
