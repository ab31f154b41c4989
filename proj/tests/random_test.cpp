#include "kcbs/random.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace kcbs;

TEST(CounterRng, DrawsArePureFunctionsOfSeedAndCounter) {
  const CounterRng a(42);
  const CounterRng b(42);
  for (std::uint64_t k = 0; k < 1000; ++k) EXPECT_EQ(a.bits(k), b.bits(k));
  EXPECT_NE(CounterRng(42).bits(0), CounterRng(43).bits(0));
}

TEST(CounterRng, UniformStaysInHalfOpenUnitInterval) {
  const CounterRng rng(1);
  double sum = 0.0;
  constexpr int kN = 200000;
  for (int k = 0; k < kN; ++k) {
    const double u = rng.uniform(k);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // mean of U(0,1) has standard error 1/sqrt(12 n)
  EXPECT_NEAR(sum / kN, 0.5, 5.0 / std::sqrt(12.0 * kN));
}

TEST(CounterRng, SubstreamsAreDistinct) {
  const CounterRng root(7);
  std::set<std::uint64_t> keys;
  for (std::uint64_t s = 0; s < 1000; ++s) keys.insert(root.substream(s).key());
  EXPECT_EQ(keys.size(), 1000u);
  EXPECT_EQ(root.substream(3).key(), CounterRng(7).substream(3).key());
}

TEST(RandomUnitVector, IsUnitAndCoversBothHemispheres) {
  const CounterRng rng(5);
  double mean_z = 0.0;
  double mean_z2 = 0.0;
  constexpr int kN = 20000;
  for (int k = 0; k < kN; ++k) {
    const Vec3 v = random_unit_vector(rng, k);
    ASSERT_NEAR(norm(v), 1.0, 1e-12);
    mean_z += v.z / kN;
    mean_z2 += v.z * v.z / kN;
  }
  // uniform on the sphere: E[z] = 0, E[z^2] = 1/3
  EXPECT_NEAR(mean_z, 0.0, 0.02);
  EXPECT_NEAR(mean_z2, 1.0 / 3.0, 0.02);
}
