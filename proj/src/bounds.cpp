#include "kcbs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kcbs/errors.hpp"

namespace kcbs {

namespace {

constexpr double kChainTol = 1e-12;

int bit_sign(std::uint32_t bits, int k) { return ((bits >> k) & 1u) ? -1 : +1; }

template <class Assignment>
BoundResult enumerate(int width, Assignment (*from_bits)(std::uint32_t)) {
  BoundResult result;
  result.minimum = std::numeric_limits<int>::max();
  result.maximum = std::numeric_limits<int>::min();
  for (std::uint32_t bits = 0; bits < (1u << width); ++bits) {
    const int s = from_bits(bits).cyclic_sum();
    ++result.histogram[s];
    result.minimum = std::min(result.minimum, s);
    result.maximum = std::max(result.maximum, s);
  }
  result.achievers = result.histogram.at(result.minimum);
  return result;
}

// P(B) * P(A | B), taken as zero when B never happens.
double via_conditional(double p_b, double p_ab) {
  if (p_b <= kChainTol) return 0.0;
  return p_b * (p_ab / p_b);
}

// Marginal and joint probabilities of one adjacent context pair (k, k+1).
struct PairProbabilities {
  double plus_k;       // P(+_k)
  double plus_next;    // P(+_{k+1})
  double plus_minus;   // P(+_k, -_{k+1})
  double minus_plus;   // P(-_k, +_{k+1})
  double minus_minus;  // P(-_k, -_{k+1}), the unobserved-mode probability
  double plus_plus;    // P(+_k, +_{k+1})
};

PairProbabilities quantum_pair(const Direction& k, const Direction& next, const StateVector& psi) {
  const double ck = detection_probability(k, psi);
  const double cn = detection_probability(next, psi);
  // A single photon cannot occupy two orthogonal modes.
  return {ck, cn, ck, cn, detection_probability(third_direction(k, next), psi), 0.0};
}

ChainStep step(const char* name, double lhs, double rhs) {
  return {name, lhs, rhs, lhs >= rhs - kChainTol};
}

}  // namespace

int NcAssignment::cyclic_sum() const {
  int s = 0;
  for (std::size_t k = 0; k < 5; ++k) s += a[k] * a[(k + 1) % 5];
  return s;
}

int CtxAssignment::measured(int label, int context_label) const {
  const int k = ((label - 1) % 5 + 5) % 5;
  const int c = ((context_label - 1) % 5 + 5) % 5;
  if (c == (k + 1) % 5) return a[static_cast<std::size_t>(2 * k)];
  if (k == (c + 1) % 5) return a[static_cast<std::size_t>(2 * c + 1)];
  throw DomainError("context label must be adjacent to the measured label");
}

int CtxAssignment::cyclic_sum() const {
  int s = 0;
  for (std::size_t k = 0; k < 5; ++k) s += a[2 * k] * a[2 * k + 1];
  return s;
}

NcAssignment nc_assignment_from_bits(std::uint32_t bits) {
  NcAssignment out;
  for (int k = 0; k < 5; ++k) out.a[static_cast<std::size_t>(k)] = bit_sign(bits, k);
  return out;
}

CtxAssignment ctx_assignment_from_bits(std::uint32_t bits) {
  CtxAssignment out;
  for (int k = 0; k < 10; ++k) out.a[static_cast<std::size_t>(k)] = bit_sign(bits, k);
  return out;
}

BoundResult noncontextual_bound() { return enumerate<NcAssignment>(5, nc_assignment_from_bits); }

BoundResult contextual_bound() { return enumerate<CtxAssignment>(10, ctx_assignment_from_bits); }

double constrained_contextual_floor(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "q must be a probability, got " << q;
    throw DomainError(os.str());
  }
  return 10.0 * q - 5.0;
}

PairMoments pair_moments(const JointDistribution& j) {
  if (!(j.pp >= 0.0 && j.pm >= 0.0 && j.mp >= 0.0 && j.mm >= 0.0)) {
    throw DomainError("joint probabilities must be non-negative");
  }
  const double total = j.pp + j.pm + j.mp + j.mm;
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "joint probabilities must sum to 1, got " << total;
    throw DomainError(os.str());
  }
  return {j.pp + j.pm - j.mp - j.mm, j.pp + j.mp - j.pm - j.mm, j.pp + j.mm - j.pm - j.mp};
}

bool check_pairproduct_inequality(const JointDistribution& joint) {
  const PairMoments m = pair_moments(joint);
  return m.mean_ab >= std::abs(m.mean_a + m.mean_b) - 1.0 - 1e-12;
}

ChainReport verify_derivation_chain(const Pentagram& pent, const StateVector& psi) {
  psi.real_vector();  // throws for complex states

  std::array<PairProbabilities, 5> pairs{};
  for (int k = 1; k <= 5; ++k) {
    pairs[static_cast<std::size_t>(k - 1)] = quantum_pair(pent.at(k), pent.at(k + 1), psi);
  }

  double correlation_sum = 0.0;
  double sum_abs_means = 0.0;
  double sum_means = 0.0;
  double expanded = 0.0;
  double bayes = 0.0;
  for (const auto& p : pairs) {
    const double minus_k = 1.0 - p.plus_k;
    const double minus_next = 1.0 - p.plus_next;
    const PairMoments m = pair_moments({p.plus_plus, p.plus_minus, p.minus_plus, p.minus_minus});
    correlation_sum += m.mean_ab;
    sum_abs_means += std::abs(m.mean_a + m.mean_b);
    sum_means += m.mean_a + m.mean_b;

    // Each mean written through conditionals on the partner's outcome.
    expanded += via_conditional(minus_next, p.plus_minus) - via_conditional(minus_next, p.minus_minus) -
                via_conditional(p.plus_next, p.minus_plus) + via_conditional(minus_k, p.minus_plus) -
                via_conditional(minus_k, p.minus_minus) - via_conditional(p.plus_k, p.plus_minus);

    // After Bayes' rule only the -- terms survive.
    bayes += -2.0 * via_conditional(minus_next, p.minus_minus);
  }

  ChainReport report;
  report.correlation_sum = correlation_sum;
  const double pair_bound = sum_abs_means - 5.0;
  const double triangle_bound = std::abs(sum_means) - 5.0;
  const double expanded_bound = std::abs(expanded) - 5.0;
  const double bayes_bound = std::abs(bayes) - 5.0;

  report.steps.push_back(step("pair_product", correlation_sum, pair_bound));
  report.steps.push_back(step("triangle", pair_bound, triangle_bound));
  report.steps.push_back(step("probability_expansion", triangle_bound, expanded_bound));
  report.steps.push_back(step("bayes", expanded_bound, bayes_bound));
  report.floor = bayes_bound;

  try {
    const ProjectionStats stats = symmetric_projection_stats(pent, psi);
    report.symmetric = true;
    double conditional_sum = 0.0;
    for (int k = 1; k <= 5; ++k) conditional_sum += conditional_negative(pent.at(k), pent.at(k + 1), psi);
    const double projection_bound = 2.0 * (1.0 - stats.c) * std::abs(conditional_sum) - 5.0;
    const double floor = constrained_contextual_floor(stats.q);
    report.steps.push_back(step("projection_rule", bayes_bound, projection_bound));
    report.steps.push_back(step("unobserved_mode", projection_bound, floor));
    report.floor = floor;
  } catch (const DomainError&) {
    // not symmetric: the chain ends at the per-pair Bayes form
  }

  report.holds = std::all_of(report.steps.begin(), report.steps.end(), [](const ChainStep& s) { return s.holds; });
  return report;
}

}  // namespace kcbs
