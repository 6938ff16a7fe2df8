#ifndef SAC_RNG_HPP
#define SAC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

namespace sac {

/// Deterministic PRNG pinned for every stochastic component of the harness:
/// SplitMix64 (Steele, Lea & Flood's 64-bit mix), with uniforms taken from
/// the top 53 bits and Gaussians via Box-Muller. One algorithm everywhere so
/// that identical (parameters, seed) always reproduce identical results.
///
/// Stream derivation conventions used across the harness:
///   per-run substream seed   = master_seed XOR run_index
///   other substreams         = derive_stream(base_seed, index)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + next_double() * (hi - lo);
  }

  /// Two independent standard normal samples from one Box-Muller transform.
  std::pair<double, double> normal_pair() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t state_;
};

/// Index-based (order-free) derivation of a disjoint child stream seed.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t index) {
  SplitMix64 mixer(base ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return mixer.next_u64();
}

}  // namespace sac

#endif  // SAC_RNG_HPP
