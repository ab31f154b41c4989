#include "kcbs/bounds.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kcbs/errors.hpp"
#include "oracles.hpp"

using namespace kcbs;

namespace {

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int m = 1; m <= k; ++m) r = r * (n - k + m) / m;
  return r;
}

}  // namespace

TEST(NoncontextualBound, MinimumIsMinusThree) {
  const BoundResult r = noncontextual_bound();
  EXPECT_EQ(r.minimum, -3);
  EXPECT_EQ(r.minimum, oracle::nc_minimum_recursive(0, 0, 0, 0));
  EXPECT_EQ(r.maximum, 5);
  EXPECT_EQ(nc_assignment_from_bits(0).cyclic_sum(), 5);
}

TEST(NoncontextualBound, OddCycleParityLeavesThreeAchievableSums) {
  // A 5-cycle has an even number s of sign changes; the sum is 5 - 2s and
  // each change pattern comes with two global signs.
  const BoundResult r = noncontextual_bound();
  std::map<int, std::int64_t> expected;
  for (int s = 0; s <= 4; s += 2) expected[5 - 2 * s] = 2 * binomial(5, s);
  EXPECT_EQ(r.histogram, expected);
  EXPECT_EQ(r.achievers, 10);
  EXPECT_EQ(r.histogram.count(-5), 0u);
}

TEST(ContextualBound, MinimumIsMinusFive) {
  const BoundResult r = contextual_bound();
  EXPECT_EQ(r.minimum, -5);
  EXPECT_EQ(r.maximum, 5);
  EXPECT_LT(r.minimum, noncontextual_bound().minimum);
}

TEST(ContextualBound, TermsAreIndependent) {
  // Each of the five products is -1 for 2 of its 4 sign pairs, so m negative
  // terms occur in C(5, m) * 2^5 assignments.
  const BoundResult r = contextual_bound();
  std::map<int, std::int64_t> expected;
  for (int m = 0; m <= 5; ++m) expected[5 - 2 * m] = binomial(5, m) * 32;
  EXPECT_EQ(r.histogram, expected);
  EXPECT_EQ(r.achievers, 32);
}

TEST(CtxAssignment, LabelsAddressOrderedPairs) {
  CtxAssignment a;
  for (std::size_t k = 0; k < 10; ++k) a.a[k] = 1;
  a.a[2] = -1;  // a_{2,3}
  a.a[9] = -1;  // a_{1,5}
  EXPECT_EQ(a.measured(2, 3), -1);
  EXPECT_EQ(a.measured(3, 2), 1);
  EXPECT_EQ(a.measured(1, 5), -1);
  EXPECT_EQ(a.measured(5, 1), 1);
  EXPECT_THROW(a.measured(1, 3), DomainError);
}

TEST(ConstrainedFloor, Values) {
  EXPECT_NEAR(constrained_contextual_floor(1.0 - 2.0 / std::sqrt(5.0)), 5.0 - 4.0 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(constrained_contextual_floor(1.0 - 2.0 / std::sqrt(5.0)), -3.9442719100, 1e-10);
  EXPECT_EQ(constrained_contextual_floor(0.0), -5.0);
  EXPECT_EQ(constrained_contextual_floor(0.5), 0.0);
  EXPECT_THROW(constrained_contextual_floor(-0.1), DomainError);
  EXPECT_THROW(constrained_contextual_floor(1.5), DomainError);
}

TEST(ConstrainedFloor, EqualsQuantumSumAtSymmetricState) {
  const Pentagram p = build_pentagram();
  const StateVector sym = symmetric_state(p);
  const double q = symmetric_projection_stats(p, sym).q;
  EXPECT_NEAR(constrained_contextual_floor(q), pentagram_sum_qm(p, sym).sum, 1e-12);
}

TEST(PairProductInequality, ExtremeDistributionsAreTight) {
  const PairMoments anti = pair_moments({0.0, 0.5, 0.5, 0.0});
  EXPECT_EQ(anti.mean_ab, -1.0);
  EXPECT_EQ(std::abs(anti.mean_a + anti.mean_b) - 1.0, -1.0);
  EXPECT_TRUE(check_pairproduct_inequality({0.0, 0.5, 0.5, 0.0}));

  const PairMoments same = pair_moments({1.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(same.mean_ab, 1.0);
  EXPECT_EQ(std::abs(same.mean_a + same.mean_b) - 1.0, 1.0);
  EXPECT_TRUE(check_pairproduct_inequality({1.0, 0.0, 0.0, 0.0}));
}

TEST(PairProductInequality, HoldsForRandomJointDistributions) {
  std::mt19937_64 rng(99);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    double w[4] = {e(rng), e(rng), e(rng), e(rng)};
    if (trial % 7 == 0) w[trial % 4] = 0.0;  // faces of the simplex
    const double t = w[0] + w[1] + w[2] + w[3];
    const JointDistribution j{w[0] / t, w[1] / t, w[2] / t, w[3] / t};
    ASSERT_TRUE(check_pairproduct_inequality(j)) << "trial " << trial;
  }
}

TEST(PairProductInequality, RejectsInvalidTables) {
  EXPECT_THROW(check_pairproduct_inequality({0.5, 0.5, 0.5, 0.0}), DomainError);
  EXPECT_THROW(check_pairproduct_inequality({-0.1, 0.6, 0.5, 0.0}), DomainError);
  EXPECT_THROW(check_pairproduct_inequality({NAN, 0.5, 0.5, 0.0}), DomainError);
}

TEST(DerivationChain, TightAtSymmetricState) {
  const Pentagram p = build_pentagram();
  const ChainReport r = verify_derivation_chain(p, symmetric_state(p));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.symmetric);
  EXPECT_EQ(r.steps.size(), 6u);
  EXPECT_NEAR(r.floor, 5.0 - 4.0 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.correlation_sum, r.floor, 1e-9);
  for (const auto& s : r.steps) EXPECT_NEAR(s.lhs, s.rhs, 1e-9) << s.name;
}

TEST(DerivationChain, HoldsAtPentagramDirection) {
  const Pentagram p = build_pentagram();
  const ChainReport r = verify_derivation_chain(p, StateVector::along(p.at(1)));
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.symmetric);
  EXPECT_EQ(r.steps.size(), 4u);
  EXPECT_GE(r.correlation_sum, r.floor - 1e-12);
}

TEST(DerivationChain, HoldsForRandomStates) {
  const Pentagram p = build_pentagram();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const ChainReport r = verify_derivation_chain(p, StateVector(oracle::random_unit(rng)));
    ASSERT_TRUE(r.holds) << "trial " << trial;
    EXPECT_GE(r.correlation_sum, 5.0 - 4.0 * std::sqrt(5.0) - 1e-9);
  }
}

TEST(DerivationChain, RejectsComplexStates) {
  const Pentagram p = build_pentagram();
  const StateVector psi = StateVector::normalized(Amplitudes{{{1, 0}, {0, 1}, {0, 0}}});
  EXPECT_THROW(verify_derivation_chain(p, psi), UnsupportedStateError);
}
