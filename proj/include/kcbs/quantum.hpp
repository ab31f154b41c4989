#pragma once

#include <array>
#include <complex>
#include <string_view>

#include "kcbs/geometry.hpp"

namespace kcbs {

inline constexpr double kNormTol = 1e-12;

using Amplitudes = std::array<std::complex<double>, 3>;

/// Normalized single-photon state over three modes (x, y, z).
class StateVector {
 public:
  /// Throws DomainError unless sum |a_k|^2 = 1 within kNormTol.
  explicit StateVector(const Amplitudes& amplitudes);
  explicit StateVector(const Vec3& real_amplitudes);

  /// Rescales to unit norm; throws DomainError on a zero or non-finite input.
  static StateVector normalized(const Amplitudes& amplitudes);
  static StateVector normalized(const Vec3& real_amplitudes);
  static StateVector along(const Direction& d) { return StateVector(d.vec()); }

  const Amplitudes& amplitudes() const { return amps_; }
  bool is_real() const { return is_real_; }

  /// Real part as a 3-vector. Throws UnsupportedStateError if !is_real().
  Vec3 real_vector() const;

 private:
  Amplitudes amps_;
  bool is_real_;
};

/// The symmetric state: aligned with the pentagram axis.
StateVector symmetric_state(const Pentagram& pent);

struct ProjectionStats {
  double c = 0.0;  // detection probability of each pentagram mode
  double q = 0.0;  // probability of the unobserved third mode of an adjacent pair
};

enum class CorrelationSource { quantum, hvm_exact, hvm_sampled };

std::string_view to_string(CorrelationSource source);

/// Adjacent-pair correlations <a_k a_{k+1}> for k = 1..5 and their total.
struct CorrelationReport {
  std::array<double, 5> pair_values{};
  double sum = 0.0;
  CorrelationSource source = CorrelationSource::quantum;
};

/// |<dir|psi>|^2
double detection_probability(const Direction& dir, const StateVector& psi);

/// <a_i a_j> for a_k = 2|k><k| - 1 and orthogonal i, j: 1 - 2(c_i + c_j).
double pair_correlation_qm(const Direction& i, const Direction& j, const StateVector& psi);

/// Same quantity evaluated as <psi| a_i a_j |psi> with explicit 3x3 matrices.
double pair_correlation_operator(const Direction& i, const Direction& j, const StateVector& psi);

CorrelationReport pentagram_sum_qm(const Pentagram& pent, const StateVector& psi);

/// P(-_i | -_j) = q_ij / (1 - c_j), q_ij being the third-mode probability.
/// Throws UndefinedConditionalError when c_j = 1.
double conditional_negative(const Direction& i, const Direction& j, const StateVector& psi);

/// c_i + c_j + q_ij; 1 for every normalized real state.
double exclusivity_check(const Direction& i, const Direction& j, const StateVector& psi);

/// c and q for a state that projects equally onto all five directions.
/// Throws DomainError if the state is not symmetric within kNormTol.
ProjectionStats symmetric_projection_stats(const Pentagram& pent, const StateVector& psi);

}  // namespace kcbs
