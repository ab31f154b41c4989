#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "kcbs/geometry.hpp"
#include "kcbs/quantum.hpp"

namespace kcbs {

/// One value per pentagram direction, each exactly +1 or -1.
struct NcAssignment {
  std::array<int, 5> a{};

  /// a_1 a_2 + a_2 a_3 + ... + a_5 a_1
  int cyclic_sum() const;
};

/// One value per ordered (measured, context) label. Slot 2k holds a_{k,k+1}
/// and slot 2k+1 holds a_{k+1,k} (k zero-based).
struct CtxAssignment {
  std::array<int, 10> a{};

  int measured(int label, int context_label) const;
  /// sum over k of a_{k,k+1} a_{k+1,k}
  int cyclic_sum() const;
};

NcAssignment nc_assignment_from_bits(std::uint32_t bits);
CtxAssignment ctx_assignment_from_bits(std::uint32_t bits);

struct BoundResult {
  int minimum = 0;
  int maximum = 0;
  std::int64_t achievers = 0;        // assignments attaining the minimum
  std::map<int, std::int64_t> histogram;  // cyclic sum -> number of assignments
};

/// Exhaustive minimum over all 32 non-contextual assignments.
BoundResult noncontextual_bound();

/// Exhaustive minimum over all 1024 contextual assignments.
BoundResult contextual_bound();

/// 10q - 5. Throws DomainError unless 0 <= q <= 1.
double constrained_contextual_floor(double q);

/// Joint distribution of two +-1 variables.
struct JointDistribution {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;
};

struct PairMoments {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double mean_ab = 0.0;
};

/// Throws DomainError for negative entries or a total that is not 1 within 1e-12.
PairMoments pair_moments(const JointDistribution& joint);

/// mean(AB) >= |mean(A) + mean(B)| - 1, moments recomputed from the joint table.
bool check_pairproduct_inequality(const JointDistribution& joint);

/// One displayed step "lhs >= rhs" of the contextual-inequality derivation.
struct ChainStep {
  const char* name;
  double lhs;
  double rhs;
  bool holds;
};

struct ChainReport {
  std::vector<ChainStep> steps;
  /// The final bound 2 sum_k P(-_{k+1}) P(-_k | -_{k+1}) - 5; reduces to 10q - 5
  /// for the symmetric state.
  double floor = 0.0;
  /// Correlation sum the chain starts from.
  double correlation_sum = 0.0;
  bool symmetric = false;
  bool holds = false;
};

/// Evaluates every step of the chain from sum <a_{k,k+1} a_{k+1,k}> down to
/// 10q - 5 using quantum probabilities for psi. Requires a real state.
ChainReport verify_derivation_chain(const Pentagram& pent, const StateVector& psi);

}  // namespace kcbs
