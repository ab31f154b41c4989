#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "kcbs/geometry.hpp"
#include "kcbs/quantum.hpp"

namespace kcbs {

/// Band used to decide equality of projections (the step and delta indicators).
inline constexpr double kBranchEps = 1e-9;

/// Tolerance on the orthogonality of a context pair.
inline constexpr double kContextTol = 1e-9;

/// Ordered pair (measured direction i, context direction j), i . j = 0.
class ContextPair {
 public:
  ContextPair(const Direction& measured, const Direction& context);

  const Direction& measured() const { return measured_; }
  const Direction& context() const { return context_; }
  ContextPair swapped() const { return ContextPair(context_, measured_); }

 private:
  Direction measured_;
  Direction context_;
};

/// Which term of the lower-threshold formula is active.
enum class ThresholdBranch {
  context_dominates,   // c_j > c_i: step term, lambda = c_i
  equal_out_of_plane,  // c_j = c_i, psi off the (i, j) plane: cross-product sign term
  equal_in_plane,      // c_j = c_i, psi in the (i, j) plane: rotated cross-product term
  measured_dominates,  // c_j < c_i: every term off, lambda = 0
};

/// Outcome -1 on [lambda_t, gamma_t], +1 elsewhere in [0, 1].
struct Thresholds {
  double lambda_t = 0.0;
  double gamma_t = 1.0;
  ThresholdBranch branch = ThresholdBranch::measured_dominates;
};

class HiddenVariable {
 public:
  /// Throws DomainError outside [0, 1].
  explicit HiddenVariable(double lambda);
  double value() const { return lambda_; }

 private:
  double lambda_;
};

/// Throws UnsupportedStateError for complex psi.
Thresholds thresholds(const ContextPair& pair, const StateVector& psi);

/// Deterministic +-1 outcome of measuring pair.measured() in context pair.context().
int outcome(const HiddenVariable& lambda, const Thresholds& t);

/// Integral of the outcome over uniform lambda: 2 lambda_t - 2 gamma_t + 1.
double marginal_exact(const ContextPair& pair, const StateVector& psi);

/// Integral over lambda in [0, 1] of A_ij(lambda) A_ji(lambda), computed by
/// summing the piecewise-constant product between sorted breakpoints.
double correlation_exact(const ContextPair& pair, const StateVector& psi);

/// Exact model correlations for the five adjacent ordered pairs.
CorrelationReport pentagram_sum_hvm(const Pentagram& pent, const StateVector& psi);

struct SampleStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t seed = 0;

  bool operator==(const SampleStats&) const = default;
};

/// Monte Carlo estimate of the pair correlation from n uniform lambda draws.
///
/// Draw k uses counter k of CounterRng(seed); the run may be split over
/// `workers` threads and the result does not depend on the split.
/// Throws DomainError for n = 0.
SampleStats sample_correlation(const ContextPair& pair, const StateVector& psi, std::uint64_t n,
                               std::uint64_t seed, unsigned workers = 1);

/// Outcome counts of (A_ij, A_ji) over shared lambda draws.
struct ConditionalTable {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t plus_plus = 0;    // A_ij = +1, A_ji = +1
  std::uint64_t plus_minus = 0;   // A_ij = +1, A_ji = -1
  std::uint64_t minus_plus = 0;   // A_ij = -1, A_ji = +1
  std::uint64_t minus_minus = 0;  // A_ij = -1, A_ji = -1

  double joint(int sign_i, int sign_j) const;
  double marginal_i(int sign_i) const;
  double marginal_j(int sign_j) const;

  /// P(sign_i on i | sign_j on j); empty when the conditioning outcome never occurred.
  std::optional<double> conditional(int sign_i, int sign_j) const;

  /// Binomial standard error of conditional(); empty when undefined.
  std::optional<double> conditional_std_error(int sign_i, int sign_j) const;

  bool operator==(const ConditionalTable&) const = default;
};

ConditionalTable sample_conditionals(const ContextPair& pair, const StateVector& psi, std::uint64_t n,
                                     std::uint64_t seed, unsigned workers = 1);

}  // namespace kcbs
