#pragma once

#include <cstdint>

#include "kcbs/geometry.hpp"

namespace kcbs {

/// Counter-based generator: the k-th draw of stream `key` is a pure function
/// of (key, k), so any partition of a run over workers reproduces the same
/// sequence. Mixing is the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  std::uint64_t bits(std::uint64_t counter) const;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;

  /// Independent stream for a sub-task (pair index, state index, ...).
  CounterRng substream(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }

 private:
  struct FromKey {};
  CounterRng(FromKey, std::uint64_t key) : key_(key) {}
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform point on the unit sphere from normalized Gaussian triples
/// (Box-Muller over the counter stream). `index` selects the point.
Vec3 random_unit_vector(const CounterRng& rng, std::uint64_t index);

}  // namespace kcbs
