#include "kcbs/hvm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "kcbs/errors.hpp"
#include "kcbs/random.hpp"

namespace kcbs {

namespace {

bool lexicographically_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

// Rotation axis for the in-plane branch: the unit vector in span{i, j}
// orthogonal to the in-plane part of psi. Built from the unordered pair so
// that both orderings see the bitwise-same axis, then sign-normalized so its
// first nonzero component is positive.
Direction in_plane_axis(const Direction& i, const Direction& j, const Vec3& psi) {
  const bool ordered = lexicographically_less(i.vec(), j.vec());
  const Direction& first = ordered ? i : j;
  const Direction& second = ordered ? j : i;
  const Vec3 normal = cross(first, second);
  const Vec3 in_plane = first.vec() * dot(first, psi) + second.vec() * dot(second, psi);
  Vec3 v = cross(normal, in_plane);
  for (int k = 0; k < 3; ++k) {
    if (std::abs(v[k]) > kGeometryTol) {
      if (v[k] < 0.0) v = -v;
      break;
    }
  }
  return Direction::normalized(v);
}

int outcome_at(double lambda, const Thresholds& t) {
  return (lambda >= t.lambda_t && lambda <= t.gamma_t) ? -1 : +1;
}

// Contiguous partition of [0, n) across workers; each part folds into its own
// accumulator and the accumulators are summed in part order.
template <class Acc, class Fn>
Acc run_partitioned(std::uint64_t n, unsigned workers, Fn&& fold) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < workers) {
    Acc acc{};
    fold(std::uint64_t{0}, n, acc);
    return acc;
  }
  std::vector<Acc> parts(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t chunk = n / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = (w + 1 == workers) ? n : begin + chunk;
    threads.emplace_back([&, w, begin, end] { fold(begin, end, parts[w]); });
  }
  for (auto& t : threads) t.join();
  Acc total{};
  for (const auto& p : parts) total += p;
  return total;
}

struct OutcomeCounts {
  std::uint64_t pp = 0, pm = 0, mp = 0, mm = 0;

  OutcomeCounts& operator+=(const OutcomeCounts& o) {
    pp += o.pp;
    pm += o.pm;
    mp += o.mp;
    mm += o.mm;
    return *this;
  }
};

OutcomeCounts count_outcomes(const ContextPair& pair, const StateVector& psi, std::uint64_t n,
                             std::uint64_t seed, unsigned workers) {
  if (n == 0) throw DomainError("sample count must be at least 1");
  const Thresholds t_ij = thresholds(pair, psi);
  const Thresholds t_ji = thresholds(pair.swapped(), psi);
  const CounterRng rng(seed);
  return run_partitioned<OutcomeCounts>(n, workers, [&](std::uint64_t begin, std::uint64_t end, OutcomeCounts& acc) {
    for (std::uint64_t k = begin; k < end; ++k) {
      const double lambda = rng.uniform(k);
      const bool a_plus = outcome_at(lambda, t_ij) > 0;
      const bool b_plus = outcome_at(lambda, t_ji) > 0;
      if (a_plus) {
        ++(b_plus ? acc.pp : acc.pm);
      } else {
        ++(b_plus ? acc.mp : acc.mm);
      }
    }
  });
}

std::uint64_t select(const ConditionalTable& t, int sign_i, int sign_j) {
  if (sign_i > 0) return sign_j > 0 ? t.plus_plus : t.plus_minus;
  return sign_j > 0 ? t.minus_plus : t.minus_minus;
}

}  // namespace

ContextPair::ContextPair(const Direction& measured, const Direction& context)
    : measured_(measured), context_(context) {
  const double d = dot(measured, context);
  if (std::abs(d) > kContextTol) {
    std::ostringstream os;
    os.precision(17);
    os << "context pair must be orthogonal, got i.j = " << d;
    throw DomainError(os.str());
  }
}

HiddenVariable::HiddenVariable(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("hidden variable must lie in [0, 1]");
}

Thresholds thresholds(const ContextPair& pair, const StateVector& psi) {
  const Vec3 s = psi.real_vector();
  const Direction& i = pair.measured();
  const Direction& j = pair.context();
  const double ci = dot(i, s) * dot(i, s);
  const double cj = dot(j, s) * dot(j, s);

  Thresholds t;
  if (std::abs(cj - ci) <= kBranchEps) {
    const Vec3 ji = cross(j, i);
    const double orient = dot(ji, s);
    if (std::abs(orient) > kBranchEps) {
      t.branch = ThresholdBranch::equal_out_of_plane;
      t.lambda_t = 0.5 * ci * (1.0 + (orient > 0.0 ? 1.0 : -1.0));
    } else {
      t.branch = ThresholdBranch::equal_in_plane;
      const Vec3 w = rotate_about(in_plane_axis(i, j, s), std::numbers::pi / 2.0, ji);
      t.lambda_t = 0.5 * (1.0 + dot(w, s)) * ci;
    }
  } else if (cj > ci) {
    t.branch = ThresholdBranch::context_dominates;
    t.lambda_t = ci;
  } else {
    t.branch = ThresholdBranch::measured_dominates;
    t.lambda_t = 0.0;
  }
  t.lambda_t = std::clamp(t.lambda_t, 0.0, 1.0);
  t.gamma_t = std::clamp(t.lambda_t - ci + 1.0, t.lambda_t, 1.0);
  return t;
}

int outcome(const HiddenVariable& lambda, const Thresholds& t) { return outcome_at(lambda.value(), t); }

double marginal_exact(const ContextPair& pair, const StateVector& psi) {
  const Thresholds t = thresholds(pair, psi);
  return 2.0 * t.lambda_t - 2.0 * t.gamma_t + 1.0;
}

double correlation_exact(const ContextPair& pair, const StateVector& psi) {
  const Thresholds t_ij = thresholds(pair, psi);
  const Thresholds t_ji = thresholds(pair.swapped(), psi);
  std::array<double, 6> cuts{0.0, t_ij.lambda_t, t_ij.gamma_t, t_ji.lambda_t, t_ji.gamma_t, 1.0};
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double width = cuts[k + 1] - cuts[k];
    if (width <= 0.0) continue;
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    integral += width * outcome_at(mid, t_ij) * outcome_at(mid, t_ji);
  }
  return integral;
}

CorrelationReport pentagram_sum_hvm(const Pentagram& pent, const StateVector& psi) {
  CorrelationReport report;
  report.source = CorrelationSource::hvm_exact;
  for (int k = 1; k <= 5; ++k) {
    const double v = correlation_exact(ContextPair(pent.at(k), pent.at(k + 1)), psi);
    report.pair_values[static_cast<std::size_t>(k - 1)] = v;
    report.sum += v;
  }
  return report;
}

SampleStats sample_correlation(const ContextPair& pair, const StateVector& psi, std::uint64_t n,
                               std::uint64_t seed, unsigned workers) {
  const OutcomeCounts c = count_outcomes(pair, psi, n, seed, workers);
  const std::uint64_t negative = c.pm + c.mp;
  const double nd = static_cast<double>(n);
  SampleStats stats;
  stats.n = n;
  stats.seed = seed;
  stats.mean = (nd - 2.0 * static_cast<double>(negative)) / nd;
  if (n > 1) {
    const double variance = std::max(0.0, nd / (nd - 1.0) * (1.0 - stats.mean * stats.mean));
    stats.std_error = std::sqrt(variance / nd);
  }
  return stats;
}

double ConditionalTable::joint(int sign_i, int sign_j) const {
  return n == 0 ? 0.0 : static_cast<double>(select(*this, sign_i, sign_j)) / static_cast<double>(n);
}

double ConditionalTable::marginal_i(int sign_i) const { return joint(sign_i, +1) + joint(sign_i, -1); }

double ConditionalTable::marginal_j(int sign_j) const { return joint(+1, sign_j) + joint(-1, sign_j); }

std::optional<double> ConditionalTable::conditional(int sign_i, int sign_j) const {
  const std::uint64_t given = select(*this, +1, sign_j) + select(*this, -1, sign_j);
  if (given == 0) return std::nullopt;
  return static_cast<double>(select(*this, sign_i, sign_j)) / static_cast<double>(given);
}

std::optional<double> ConditionalTable::conditional_std_error(int sign_i, int sign_j) const {
  const auto p = conditional(sign_i, sign_j);
  if (!p) return std::nullopt;
  const double given = static_cast<double>(select(*this, +1, sign_j) + select(*this, -1, sign_j));
  return std::sqrt(*p * (1.0 - *p) / given);
}

ConditionalTable sample_conditionals(const ContextPair& pair, const StateVector& psi, std::uint64_t n,
                                     std::uint64_t seed, unsigned workers) {
  const OutcomeCounts c = count_outcomes(pair, psi, n, seed, workers);
  ConditionalTable table;
  table.n = n;
  table.seed = seed;
  table.plus_plus = c.pp;
  table.plus_minus = c.pm;
  table.minus_plus = c.mp;
  table.minus_minus = c.mm;
  return table;
}

}  // namespace kcbs
