#include "kcbs/random.hpp"

#include <cmath>
#include <numbers>

namespace kcbs {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return splitmix64(key_ + counter * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::substream(std::uint64_t index) const {
  return CounterRng(FromKey{}, splitmix64(key_ ^ splitmix64(index + 0x632BE59BD9B4E019ull)));
}

Vec3 random_unit_vector(const CounterRng& rng, std::uint64_t index) {
  // Six uniforms per attempt; attempts are counted so the result stays a pure
  // function of (rng, index).
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t base = (index * 64 + attempt) * 6;
    double g[3];
    for (int k = 0; k < 3; ++k) {
      const double u1 = 1.0 - rng.uniform(base + 2 * k);  // (0, 1]
      const double u2 = rng.uniform(base + 2 * k + 1);
      g[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    const Vec3 v{g[0], g[1], g[2]};
    const double n = norm(v);
    if (n > 1e-6) return v / n;
  }
}

}  // namespace kcbs
