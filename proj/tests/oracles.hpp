#pragma once

// Test-only reference computations. Nothing here calls the code paths they
// are used to check.

#include <cmath>
#include <cstdint>
#include <random>

#include "kcbs/geometry.hpp"
#include "kcbs/hvm.hpp"

namespace kcbs::oracle {

inline double inv_sqrt5() { return 1.0 / std::sqrt(5.0); }

/// Midpoint-rule quadrature of A_ij(lambda) A_ji(lambda) on a uniform grid.
/// Error is bounded by (number of breakpoints) / cells.
inline double correlation_by_quadrature(const Thresholds& t_ij, const Thresholds& t_ji, int cells) {
  double total = 0.0;
  for (int k = 0; k < cells; ++k) {
    const HiddenVariable lambda((k + 0.5) / cells);
    total += outcome(lambda, t_ij) * outcome(lambda, t_ji);
  }
  return total / cells;
}

/// Minimum of a_1 a_2 + ... + a_5 a_1 by recursion over the five signs.
inline int nc_minimum_recursive(int depth, int first, int prev, int acc) {
  if (depth == 5) return acc + prev * first;
  int best = 1 << 20;
  for (int s : {-1, +1}) {
    const int next_acc = depth == 0 ? 0 : acc + prev * s;
    const int f = depth == 0 ? s : first;
    best = std::min(best, nc_minimum_recursive(depth + 1, f, s, next_acc));
  }
  return best;
}

/// Uniform real unit vector from an independent engine.
inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-3) return v / n;
  }
}

}  // namespace kcbs::oracle
