#include "kcbs/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kcbs/errors.hpp"

namespace kcbs {

namespace {

double norm_squared(const Amplitudes& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

void require_orthogonal(const Direction& i, const Direction& j, const char* op) {
  const double d = dot(i, j);
  if (std::abs(d) > kGeometryTol) {
    std::ostringstream os;
    os.precision(17);
    os << op << " requires orthogonal directions, got i.j = " << d;
    throw DomainError(os.str());
  }
}

Amplitudes from_real(const Vec3& v) { return {{{v.x, 0.0}, {v.y, 0.0}, {v.z, 0.0}}}; }

using Matrix3 = std::array<std::array<double, 3>, 3>;

// 2|d><d| - 1
Matrix3 sign_observable(const Direction& d) {
  Matrix3 m{};
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) {
      m[r][s] = 2.0 * d.vec()[r] * d.vec()[s] - (r == s ? 1.0 : 0.0);
    }
  }
  return m;
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 m{};
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s)
      for (int k = 0; k < 3; ++k) m[r][s] += a[r][k] * b[k][s];
  return m;
}

}  // namespace

StateVector::StateVector(const Amplitudes& amplitudes) : amps_(amplitudes) {
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DomainError("state vector has non-finite amplitudes");
    }
  }
  const double n2 = norm_squared(amps_);
  if (std::abs(n2 - 1.0) > kNormTol) {
    std::ostringstream os;
    os.precision(17);
    os << "state vector is not normalized: sum |a|^2 = " << n2;
    throw DomainError(os.str());
  }
  is_real_ = std::abs(amps_[0].imag()) <= kNormTol && std::abs(amps_[1].imag()) <= kNormTol &&
             std::abs(amps_[2].imag()) <= kNormTol;
}

StateVector::StateVector(const Vec3& real_amplitudes) : StateVector(from_real(real_amplitudes)) {}

StateVector StateVector::normalized(const Amplitudes& amplitudes) {
  const double n = std::sqrt(norm_squared(amplitudes));
  if (!std::isfinite(n) || n == 0.0) throw DomainError("cannot normalize a zero or non-finite state");
  Amplitudes scaled = amplitudes;
  for (auto& a : scaled) a /= n;
  return StateVector(scaled);
}

StateVector StateVector::normalized(const Vec3& real_amplitudes) {
  return normalized(from_real(real_amplitudes));
}

Vec3 StateVector::real_vector() const {
  if (!is_real_) throw UnsupportedStateError("state vector has nonzero imaginary amplitudes");
  return {amps_[0].real(), amps_[1].real(), amps_[2].real()};
}

StateVector symmetric_state(const Pentagram& pent) { return StateVector::along(pent.axis); }

std::string_view to_string(CorrelationSource source) {
  switch (source) {
    case CorrelationSource::quantum:
      return "quantum";
    case CorrelationSource::hvm_exact:
      return "hvm_exact";
    case CorrelationSource::hvm_sampled:
      return "hvm_sampled";
  }
  return "unknown";
}

double detection_probability(const Direction& dir, const StateVector& psi) {
  const auto& a = psi.amplitudes();
  const std::complex<double> overlap = dir.x() * a[0] + dir.y() * a[1] + dir.z() * a[2];
  return std::min(1.0, std::norm(overlap));
}

double pair_correlation_qm(const Direction& i, const Direction& j, const StateVector& psi) {
  require_orthogonal(i, j, "pair_correlation_qm");
  return 1.0 - 2.0 * (detection_probability(i, psi) + detection_probability(j, psi));
}

double pair_correlation_operator(const Direction& i, const Direction& j, const StateVector& psi) {
  require_orthogonal(i, j, "pair_correlation_operator");
  const Matrix3 m = multiply(sign_observable(i), sign_observable(j));
  const auto& a = psi.amplitudes();
  std::complex<double> expectation = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) expectation += std::conj(a[r]) * m[r][s] * a[s];
  return expectation.real();
}

CorrelationReport pentagram_sum_qm(const Pentagram& pent, const StateVector& psi) {
  CorrelationReport report;
  report.source = CorrelationSource::quantum;
  for (int k = 1; k <= 5; ++k) {
    const double v = pair_correlation_qm(pent.at(k), pent.at(k + 1), psi);
    report.pair_values[static_cast<std::size_t>(k - 1)] = v;
    report.sum += v;
  }
  return report;
}

double conditional_negative(const Direction& i, const Direction& j, const StateVector& psi) {
  const double q = detection_probability(third_direction(i, j), psi);
  const double not_j = 1.0 - detection_probability(j, psi);
  if (not_j <= kNormTol) {
    throw UndefinedConditionalError("P(-_i | -_j) is undefined: mode j is occupied with certainty");
  }
  return std::min(1.0, q / not_j);
}

double exclusivity_check(const Direction& i, const Direction& j, const StateVector& psi) {
  return detection_probability(i, psi) + detection_probability(j, psi) +
         detection_probability(third_direction(i, j), psi);
}

ProjectionStats symmetric_projection_stats(const Pentagram& pent, const StateVector& psi) {
  const double c = detection_probability(pent.at(1), psi);
  for (int k = 2; k <= 5; ++k) {
    if (std::abs(detection_probability(pent.at(k), psi) - c) > kNormTol) {
      throw DomainError("state does not project equally onto the pentagram directions");
    }
  }
  return {c, detection_probability(third_direction(pent.at(1), pent.at(2)), psi)};
}

}  // namespace kcbs
