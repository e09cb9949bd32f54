#pragma once

#include <cstdint>
#include <random>

namespace meshtok {

/// Seeded generator with platform-independent derived distributions.
///
/// The standard distribution classes are implementation-defined, so the
/// uniform helpers here are written out to keep seeded output identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) {
      v = engine_();
    }
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace meshtok
