#include "kcbs/geometry.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "kcbs/errors.hpp"
#include "oracles.hpp"

using namespace kcbs;

namespace {

constexpr double kTol = 1e-12;
const Direction kX({1, 0, 0});
const Direction kY({0, 1, 0});
const Direction kZ({0, 0, 1});

void expect_near(const Vec3& a, const Vec3& b, double tol = kTol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(Direction, RejectsNonUnitAndNonFinite) {
  EXPECT_THROW(Direction({2, 0, 0}), DomainError);
  EXPECT_THROW(Direction({1e-3, 0, 0}), DomainError);
  EXPECT_THROW(Direction({NAN, 0, 0}), DomainError);
  EXPECT_THROW(Direction::normalized({0, 0, 0}), DomainError);
  EXPECT_NO_THROW(Direction::normalized({3, 4, 0}));
  EXPECT_DOUBLE_EQ(Direction::normalized({3, 4, 0}).y(), 0.8);
}

TEST(Pentagram, AdjacentDirectionsAreOrthogonal) {
  const Pentagram p = build_pentagram();
  for (int k = 1; k <= 5; ++k) EXPECT_NEAR(dot(p.at(k), p.at(k + 1)), 0.0, kTol) << "pair " << k;
}

TEST(Pentagram, NonAdjacentDirectionsAreNotOrthogonal) {
  const Pentagram p = build_pentagram();
  for (int k = 1; k <= 5; ++k) {
    const double d = dot(p.at(k), p.at(k + 2));
    EXPECT_GT(std::abs(d), 0.1) << "pair " << k << "," << k + 2;
    // cos^2(polar) + sin^2(polar) cos(2 pi / 5) = (sqrt(5) - 1) / 2 by hand
    EXPECT_NEAR(std::abs(d), (std::sqrt(5.0) - 1.0) / 2.0, kTol);
  }
}

TEST(Pentagram, AxisProjectionIsInverseRootFive) {
  // cos(pi/5) / (1 + cos(pi/5)) evaluated independently of the construction
  const double cp = std::cos(std::numbers::pi / 5.0);
  const double expected = cp / (1.0 + cp);
  EXPECT_NEAR(expected, 0.4472135955, 1e-10);
  EXPECT_NEAR(expected, 1.0 / std::sqrt(5.0), 1e-15);

  const Pentagram p = build_pentagram();
  for (int k = 1; k <= 5; ++k) {
    const double a = dot(p.at(k), p.axis);
    EXPECT_NEAR(a * a, expected, kTol);
  }
  expect_near(p.axis.vec(), {0, 0, 1}, 0.0);
}

TEST(Pentagram, LabelsWrapModuloFive) {
  const Pentagram p = build_pentagram();
  EXPECT_EQ(p.at(6).vec(), p.at(1).vec());
  EXPECT_EQ(p.at(0).vec(), p.at(5).vec());
  EXPECT_EQ(p.at(-4).vec(), p.at(1).vec());
}

TEST(RotateAbout, QuarterTurnAboutZTakesXToY) {
  expect_near(rotate_about(kZ, std::numbers::pi / 2, kX.vec()), kY.vec());
}

TEST(RotateAbout, ZeroAngleIsIdentity) {
  const Vec3 x{0.3, -1.2, 2.5};
  expect_near(rotate_about(Direction::normalized({1, 2, 3}), 0.0, x), x, 0.0);
}

TEST(RotateAbout, QuarterTurnOfPerpendicularVectorIsCrossProduct) {
  const Direction v = Direction::normalized({1, 1, 0});
  const Vec3 n{1, -1, 2};
  ASSERT_NEAR(dot(v.vec(), n), 0.0, kTol);
  expect_near(rotate_about(v, std::numbers::pi / 2, n), cross(v.vec(), n));
}

TEST(RotateAbout, PreservesLengthAndInvertsProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Direction v(oracle::random_unit(rng));
    const double theta = angle(rng);
    const Vec3 x{coord(rng), coord(rng), coord(rng)};
    const Vec3 y = rotate_about(v, theta, x);
    EXPECT_NEAR(norm(y), norm(x), kTol * 10);
    expect_near(rotate_about(v, theta, rotate_about(v, -theta, x)), x, 1e-12 * 10);
  }
}

TEST(ThirdDirection, CompletesTheStandardBasis) {
  const Direction z = third_direction(kX, kY);
  expect_near(z.vec(), {0, 0, 1});
}

TEST(ThirdDirection, IsOrthogonalToPentagramPair) {
  const Pentagram p = build_pentagram();
  for (int k = 1; k <= 5; ++k) {
    const Direction d = third_direction(p.at(k), p.at(k + 1));
    EXPECT_NEAR(dot(d, p.at(k)), 0.0, kTol);
    EXPECT_NEAR(dot(d, p.at(k + 1)), 0.0, kTol);
    // 2c + q = 1 with c = 1/sqrt(5)
    const double a = dot(d, p.axis);
    EXPECT_NEAR(a * a, 1.0 - 2.0 * oracle::inv_sqrt5(), kTol);
    EXPECT_NEAR(a * a, 0.1055728090, 1e-10);
  }
}

TEST(ThirdDirection, AntisymmetricInArguments) {
  const Pentagram p = build_pentagram();
  for (int k = 1; k <= 5; ++k) {
    expect_near(third_direction(p.at(k), p.at(k + 1)).vec(), -third_direction(p.at(k + 1), p.at(k)).vec());
  }
}

TEST(ThirdDirection, RejectsNonOrthogonalAndParallelInputs) {
  EXPECT_THROW(third_direction(kX, Direction::normalized({1, 1, 0})), DomainError);
  EXPECT_THROW(third_direction(kX, kX), DomainError);
  const Pentagram p = build_pentagram();
  EXPECT_THROW(third_direction(p.at(1), p.at(3)), DomainError);
}
