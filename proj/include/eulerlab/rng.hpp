#ifndef EULERLAB_RNG_HPP
#define EULERLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace eulerlab {

/// Deterministic uniform generator.  std::uniform_real_distribution is
/// implementation-defined, so doubles are derived from the raw 64-bit stream
/// directly; identical seeds give identical samples on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double canonical() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return engine_() % n; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eulerlab

#endif
