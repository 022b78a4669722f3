#include "bellsim/statistics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/hidden_variables.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::qm: return "qm";
    case Model::lhv_threshold: return "lhv_threshold";
  }
  throw std::invalid_argument("unknown model");
}

Model parse_model(std::string_view name) {
  if (name == "qm") return Model::qm;
  if (name == "lhv_threshold") return Model::lhv_threshold;
  throw std::invalid_argument("model must be qm or lhv_threshold, got '" + std::string(name) + "'");
}

MismatchStats MismatchStats::from_counts(std::uint64_t n, std::uint64_t mismatches) {
  if (n == 0) {
    throw std::invalid_argument("counted statistics need at least one trial");
  }
  if (mismatches > n) {
    throw std::invalid_argument("mismatch count exceeds trial count");
  }
  MismatchStats stats;
  stats.n = n;
  stats.mismatches = mismatches;
  stats.e = static_cast<double>(mismatches) / static_cast<double>(n);
  stats.f = 1.0 - stats.e;
  stats.ci_half_width = 3.0 * std::sqrt(stats.e * stats.f / static_cast<double>(n));
  ensure_invariant(stats.e >= 0.0 && stats.e <= 1.0 && stats.e + stats.f == 1.0,
                   "mismatch fraction out of range");
  return stats;
}

MismatchStats MismatchStats::exact(double e) {
  if (!(e >= 0.0 && e <= 1.0)) {
    throw std::invalid_argument("exact mismatch fraction must lie in [0, 1]");
  }
  MismatchStats stats;
  stats.e = e;
  stats.f = 1.0 - e;
  return stats;
}

MismatchStats mismatch_fraction(const OutcomeSeries& a, const OutcomeSeries& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("series lengths differ");
  }
  if (a.empty()) {
    throw std::invalid_argument("series are empty");
  }
  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mismatches += a[i] != b[i];
  }
  return MismatchStats::from_counts(a.size(), mismatches);
}

std::string_view to_string(BellVerdict verdict) {
  switch (verdict) {
    case BellVerdict::satisfies_bell: return "satisfies_bell";
    case BellVerdict::violates_bell: return "violates_bell";
    case BellVerdict::inconclusive: return "inconclusive";
  }
  throw std::invalid_argument("unknown verdict");
}

BellGapReport bell_gap(Angle theta, const MismatchStats& e_theta,
                       const MismatchStats& e_2theta) {
  BellGapReport report;
  report.theta = theta;
  report.e_theta = e_theta;
  report.e_2theta = e_2theta;
  report.gap = e_2theta.e - 2.0 * e_theta.e;
  report.gap_ci_half_width =
      std::sqrt(e_2theta.ci_half_width * e_2theta.ci_half_width +
                4.0 * e_theta.ci_half_width * e_theta.ci_half_width);
  if (report.gap > report.gap_ci_half_width) {
    report.verdict = BellVerdict::violates_bell;
  } else if (report.gap <= 0.0) {
    report.verdict = BellVerdict::satisfies_bell;
  } else {
    report.verdict = BellVerdict::inconclusive;
  }
  return report;
}

std::vector<BellGapReport> sweep_gap_analytic(Model model,
                                              const std::vector<Angle>& theta_grid) {
  std::vector<BellGapReport> reports;
  reports.reserve(theta_grid.size());
  for (Angle theta : theta_grid) {
    if (theta.deg() > 45.0) {
      throw std::invalid_argument("gap analysis requires theta in [0, 45] degrees");
    }
    const Angle twice(2.0 * theta.deg());
    const double e1 = model == Model::qm ? analytic_mismatch_qm(theta)
                                         : analytic_mismatch_lhv_threshold(theta);
    const double e2 = model == Model::qm ? analytic_mismatch_qm(twice)
                                         : analytic_mismatch_lhv_threshold(twice);
    reports.push_back(bell_gap(theta, MismatchStats::exact(e1), MismatchStats::exact(e2)));
  }
  return reports;
}

}  // namespace bellsim
