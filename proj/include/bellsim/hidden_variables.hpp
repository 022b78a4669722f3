#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/series.hpp"

namespace bellsim {

/// Local hidden-variable pair: both photons carry the same hidden axis and
/// answer every polarizer deterministically, with no communication.
struct HiddenPairState {
  Angle lambda;
};

/// Threshold response: the photon passes exactly when its hidden axis lies
/// strictly within 45 degrees of the polarizer axis. A separation of exactly
/// 45 degrees is blocked, keeping pass arcs exactly 90 degrees wide.
TrialOutcome sample_trial_lhv(const HiddenPairState& pair, Angle axis_a, Angle axis_b);

/// Mismatch probability of the threshold response under a uniform hidden
/// axis: theta / 90 for separations reduced to [0, 90] degrees. Linear in
/// theta, so doubling the angle exactly doubles the mismatch.
double analytic_mismatch_lhv_threshold(Angle theta_rel);

/// Two detector series derived from a common base by flipping k distinct
/// positions on each side. flips_a and flips_b must have the same size.
struct FlipConstruction {
  OutcomeSeries base;
  std::vector<std::size_t> flips_a;
  std::vector<std::size_t> flips_b;
};

/// Apply a FlipConstruction; validates position ranges and distinctness.
std::pair<OutcomeSeries, OutcomeSeries> build_flip_series(const FlipConstruction& construction);

/// Exact distribution of mismatch(a, b) over flip-set pairs. Keys count
/// differing positions (mismatch fraction = key / n); values count pairs.
struct FlipMismatchDistribution {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t total_pairs = 0;
  std::map<std::size_t, std::uint64_t> pair_counts;

  double min_fraction() const;
  double max_fraction() const;
  /// Largest mismatch two k-flip series can reach: min(2k, n) / n.
  double bell_bound() const;
  bool within_bell_bound() const;
};

/// Enumerate every pair of k-subsets of the base's positions (C(n, k)^2
/// pairs) and tally |flips_a xor flips_b|. The distribution is independent of
/// the base's bit values; the base supplies n and keeps the call shaped like
/// the construction it audits. Guarded to n <= 16.
FlipMismatchDistribution enumerate_flip_mismatches(const OutcomeSeries& base, std::size_t k);

}  // namespace bellsim
