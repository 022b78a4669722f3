#include "bellsim/hidden_variables.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bellsim/errors.hpp"

namespace bellsim {

TrialOutcome sample_trial_lhv(const HiddenPairState& pair, Angle axis_a, Angle axis_b) {
  const auto passes = [&pair](Angle axis) {
    return relative_angle(pair.lambda, axis).deg() < 45.0;
  };
  return {passes(axis_a), passes(axis_b)};
}

double analytic_mismatch_lhv_threshold(Angle theta_rel) {
  double d = theta_rel.deg();
  if (d > 90.0) {
    d = 180.0 - d;
  }
  return d / 90.0;
}

std::pair<OutcomeSeries, OutcomeSeries> build_flip_series(const FlipConstruction& construction) {
  const std::size_t n = construction.base.size();
  if (n == 0) {
    throw std::invalid_argument("flip construction needs a non-empty base series");
  }
  if (construction.flips_a.size() != construction.flips_b.size()) {
    throw std::invalid_argument("flip sets must have the same size");
  }
  const auto apply = [n](const OutcomeSeries& base, const std::vector<std::size_t>& flips) {
    std::vector<std::uint8_t> bits = base.bits();
    std::vector<std::size_t> seen = flips;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw std::invalid_argument("flip positions must be distinct");
    }
    for (std::size_t pos : flips) {
      if (pos >= n) {
        throw std::invalid_argument("flip position out of range");
      }
      bits[pos] ^= 1;
    }
    return OutcomeSeries(std::move(bits));
  };
  return {apply(construction.base, construction.flips_a),
          apply(construction.base, construction.flips_b)};
}

double FlipMismatchDistribution::min_fraction() const {
  return pair_counts.empty() ? 0.0
                             : static_cast<double>(pair_counts.begin()->first) /
                                   static_cast<double>(n);
}

double FlipMismatchDistribution::max_fraction() const {
  return pair_counts.empty() ? 0.0
                             : static_cast<double>(pair_counts.rbegin()->first) /
                                   static_cast<double>(n);
}

double FlipMismatchDistribution::bell_bound() const {
  return std::min(2.0 * static_cast<double>(k), static_cast<double>(n)) /
         static_cast<double>(n);
}

bool FlipMismatchDistribution::within_bell_bound() const {
  const std::size_t cap = std::min(2 * k, n);
  return pair_counts.empty() || pair_counts.rbegin()->first <= cap;
}

FlipMismatchDistribution enumerate_flip_mismatches(const OutcomeSeries& base, std::size_t k) {
  const std::size_t n = base.size();
  if (n == 0 || n > 16) {
    throw std::invalid_argument("exhaustive enumeration requires 1 <= n <= 16");
  }
  if (k > n) {
    throw std::invalid_argument("cannot flip more positions than the series has");
  }

  // All k-subsets of n positions as bitmasks, in Gosper order.
  std::vector<std::uint32_t> masks;
  const std::uint32_t limit = 1u << n;
  if (k == 0) {
    masks.push_back(0);
  } else {
    std::uint32_t m = (1u << k) - 1;
    while (m < limit) {
      masks.push_back(m);
      const std::uint32_t low = m & (0u - m);
      const std::uint32_t ripple = m + low;
      m = (((ripple ^ m) >> 2) / low) | ripple;
    }
  }

  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::uint32_t ma : masks) {
    for (std::uint32_t mb : masks) {
      counts[static_cast<std::size_t>(std::popcount(ma ^ mb))] += 1;
    }
  }

  FlipMismatchDistribution dist;
  dist.n = n;
  dist.k = k;
  dist.total_pairs = static_cast<std::uint64_t>(masks.size()) * masks.size();
  for (std::size_t d = 0; d <= n; ++d) {
    if (counts[d] != 0) {
      dist.pair_counts.emplace(d, counts[d]);
    }
  }
  ensure_invariant(dist.within_bell_bound(),
                   "flip-pair mismatch exceeded the 2k/n bound");
  return dist;
}

}  // namespace bellsim
