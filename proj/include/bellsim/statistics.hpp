#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/series.hpp"

namespace bellsim {

enum class Model { qm, lhv_threshold };

std::string_view to_string(Model model);
Model parse_model(std::string_view name);

/// Mismatch/match fractions for a pair of detector series, with a 3-sigma
/// binomial half-width. Construction guarantees e + f == 1.0 exactly.
/// Analytic expectations are represented with n == 0 and a zero half-width;
/// the count-based relations below hold whenever n > 0.
struct MismatchStats {
  std::uint64_t n = 0;
  std::uint64_t mismatches = 0;
  double e = 0.0;             // mismatch fraction, mismatches / n
  double f = 1.0;             // match fraction, 1 - e
  double ci_half_width = 0.0; // 3 * sqrt(e * (1 - e) / n); 0 when exact

  static MismatchStats from_counts(std::uint64_t n, std::uint64_t mismatches);
  static MismatchStats exact(double e);

  bool is_exact() const { return n == 0; }
};

/// Compare two equal-length, non-empty series position by position.
MismatchStats mismatch_fraction(const OutcomeSeries& a, const OutcomeSeries& b);

enum class BellVerdict { satisfies_bell, violates_bell, inconclusive };

std::string_view to_string(BellVerdict verdict);

/// Test of E(2 theta) <= 2 E(theta) at one angle.
///
/// gap = e_2theta.e - 2 * e_theta.e, with combined 3-sigma half-width
/// sqrt(ci_2theta^2 + 4 * ci_theta^2). Verdict rule:
///   violates_bell   iff gap > gap_ci_half_width (significantly positive),
///   satisfies_bell  iff gap <= 0 (the inequality holds as observed,
///                   including the exact equality boundary at 45 degrees),
///   inconclusive    otherwise (positive but within noise).
struct BellGapReport {
  Angle theta;
  MismatchStats e_theta;
  MismatchStats e_2theta;
  double gap = 0.0;
  double gap_ci_half_width = 0.0;
  BellVerdict verdict = BellVerdict::satisfies_bell;
};

BellGapReport bell_gap(Angle theta, const MismatchStats& e_theta,
                       const MismatchStats& e_2theta);

/// Gap reports from the closed-form mismatch curve of the chosen model over a
/// grid of angles in [0, 45] degrees (so that 2 theta stays within [0, 90]).
std::vector<BellGapReport> sweep_gap_analytic(Model model,
                                              const std::vector<Angle>& theta_grid);

}  // namespace bellsim
