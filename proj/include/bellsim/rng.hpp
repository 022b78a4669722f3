#pragma once

#include <cstdint>

namespace bellsim {

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;

/// splitmix64 finalizer; full-avalanche bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Small counter-based generator (splitmix64). One instance is derived per
/// trial via substream(), so results never depend on how trials are split
/// across worker threads.
class TrialRng {
 public:
  explicit constexpr TrialRng(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next_u64() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1), 53-bit resolution (never returns 1.0, so a
  /// pass probability of exactly 1 always passes and exactly 0 never does).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform axis in [0, 180) degrees.
  double next_angle_deg() { return next_unit() * 180.0; }

  /// Uniform integer in [0, bound), unbiased via rejection. bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t v = next_u64();
    while (v < reject_below) {
      v = next_u64();
    }
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

/// Stateless substream derivation keyed by (seed, role, index). Roles keep
/// independent parts of a run (stages, sweep rows, series sampling) on
/// disjoint streams; the index is the trial counter within the role.
inline TrialRng substream(std::uint64_t seed, std::uint64_t role, std::uint64_t index) {
  std::uint64_t h = mix64(seed + kSplitMixGamma);
  h = mix64(h ^ (role + kSplitMixGamma));
  h = mix64(h ^ (index + kSplitMixGamma));
  return TrialRng(h);
}

}  // namespace bellsim
