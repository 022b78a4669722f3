// Acceptance gate: one self-contained check per release criterion, one
// PASS/FAIL line each on stdout, nonzero exit if anything fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bellsim/experiment.hpp"
#include "bellsim/hidden_variables.hpp"
#include "bellsim/quantum.hpp"
#include "bellsim/relativity.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/statistics.hpp"

using namespace bellsim;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool check(bool condition, const std::string& message, std::string& detail) {
  if (!condition && detail.empty()) {
    detail = message;
  }
  return condition;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Closed-form mismatch values at 30 and 60 degrees, to 1e-12.
bool criterion_analytic(std::string& detail) {
  bool ok = true;
  ok &= check(std::fabs(analytic_mismatch_qm(Angle(30.0)) - 0.25) <= 1e-12,
              "mismatch at 30 degrees is not 0.25", detail);
  ok &= check(std::fabs(analytic_mismatch_qm(Angle(60.0)) - 0.75) <= 1e-12,
              "mismatch at 60 degrees is not 0.75", detail);
  return ok;
}

// 2. Quantum Monte Carlo at theta = 30, N = 1e5: rates within 3 sigma of the
// closed forms and a violates_bell verdict, in under five seconds.
bool criterion_qm_violation(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig config;
  config.model = Model::qm;
  config.theta = Angle(30.0);
  config.trials = 100000;
  config.seed = 2025;
  const StageResult single = run_stage(config, 2);   // axes 30 degrees apart
  const StageResult doubled = run_stage(config, 4);  // axes 60 degrees apart
  const double sigma3_single = 3.0 * std::sqrt(0.25 * 0.75 / 100000.0);
  const double sigma3_double = 3.0 * std::sqrt(0.75 * 0.25 / 100000.0);
  const BellGapReport gap = bell_gap(config.theta, single.stats, doubled.stats);

  bool ok = true;
  ok &= check(std::fabs(single.stats.e - 0.25) <= sigma3_single,
              "E(30) = " + format_sig9(single.stats.e) + " is not within 3 sigma of 0.25",
              detail);
  ok &= check(std::fabs(doubled.stats.e - 0.75) <= sigma3_double,
              "E(60) = " + format_sig9(doubled.stats.e) + " is not within 3 sigma of 0.75",
              detail);
  ok &= check(gap.verdict == BellVerdict::violates_bell,
              std::string("verdict is ") + std::string(to_string(gap.verdict)), detail);
  const double seconds = elapsed_seconds(start);
  ok &= check(seconds < 5.0, "took " + format_sig9(seconds) + " s (budget 5 s)", detail);
  return ok;
}

// 3. Threshold-model Monte Carlo tracks theta/90 within 3 sigma across
// {10..80} degrees and never triggers violates_bell on the [0, 45] gap grid.
bool criterion_lhv_compliance(std::string& detail) {
  bool ok = true;
  for (int theta = 10; theta <= 80; theta += 10) {
    ExperimentConfig config;
    config.model = Model::lhv_threshold;
    config.theta = Angle(static_cast<double>(theta));
    config.trials = 100000;
    config.seed = 912;
    const StageResult result = run_stage(config, 2, 2);
    const double expected = theta / 90.0;
    const double sigma3 = 3.0 * std::sqrt(expected * (1.0 - expected) / 100000.0);
    ok &= check(std::fabs(result.stats.e - expected) <= sigma3,
                "E(" + std::to_string(theta) + ") = " + format_sig9(result.stats.e) +
                    " is more than 3 sigma from " + format_sig9(expected),
                detail);
  }
  SweepOptions options;
  options.base.model = Model::lhv_threshold;
  options.base.trials = 100000;
  options.base.seed = 913;
  options.gap_mode = true;
  options.grid = make_theta_grid(0.0, 45.0, 5.0);
  options.threads = 2;
  for (const SweepRow& row : run_sweep(options)) {
    ok &= check(row.gap->verdict != BellVerdict::violates_bell,
                "false violation at theta = " + format_sig9(row.theta.deg()), detail);
  }
  return ok;
}

// 4. Exhaustive flip-set audit at n = 12, k = 4: all 245,025 pairs, extreme
// mismatches 2/3 and 0, every single-side mismatch exactly 1/3, under 1 s.
bool criterion_series_oracle(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  SeriesDemoOptions options;
  options.n = 12;
  options.k = 4;
  options.seed = 6;
  options.exhaustive = true;
  const SeriesDemoReport report = run_series_demo(options);

  bool ok = true;
  ok &= check(report.distribution.total_pairs == 245025,
              "expected 245025 pairs, got " + std::to_string(report.distribution.total_pairs),
              detail);
  ok &= check(report.distribution.max_fraction() == 8.0 / 12.0, "max mismatch is not 2/3",
              detail);
  ok &= check(report.distribution.min_fraction() == 0.0, "min mismatch is not 0", detail);

  // Every k-subset, taken as either side's flip set, sits exactly k/n from
  // the base. Walk all C(12,4) subsets independently of the library's
  // enumeration order.
  std::vector<std::size_t> selector(12, 0);
  std::fill(selector.begin(), selector.begin() + 4, 1);
  std::sort(selector.begin(), selector.end(), std::greater<>());
  std::size_t subsets = 0;
  do {
    std::vector<std::size_t> flips;
    for (std::size_t pos = 0; pos < selector.size(); ++pos) {
      if (selector[pos] == 1) {
        flips.push_back(pos);
      }
    }
    const auto [series_a, series_b] = build_flip_series({report.base, flips, flips});
    ok &= mismatch_fraction(report.base, series_a).e == 4.0 / 12.0;
    ok &= mismatch_fraction(report.base, series_b).e == 4.0 / 12.0;
    ++subsets;
  } while (std::prev_permutation(selector.begin(), selector.end()));
  ok &= check(subsets == 495, "expected 495 subsets, got " + std::to_string(subsets), detail);
  if (!ok && detail.empty()) {
    detail = "some flip set does not sit exactly 1/3 from the base";
  }
  const double seconds = elapsed_seconds(start);
  ok &= check(seconds < 1.0, "took " + format_sig9(seconds) + " s (budget 1 s)", detail);
  return ok;
}

// 5. Boosted-frame regression: the built-in two-detector scenario and the
// 1.1c signal bookkeeping reproduce their reference numbers.
bool criterion_relativity_regression(std::string& detail) {
  const RelativityReport report = run_relativity_example(RelativityScenario{});
  bool ok = true;
  ok &= check(std::fabs(report.event1_boosted.t / 100e-9 - 1.0) <= 1e-9,
              "t1' = " + format_sig9(report.event1_boosted.t) + " s, expected 100 ns", detail);
  ok &= check(std::fabs(report.event2_boosted.t / 25.5e-9 - 1.0) <= 1e-9,
              "t2' = " + format_sig9(report.event2_boosted.t) + " s, expected 25.5 ns", detail);
  ok &= check(report.reversal_threshold.has_value() &&
                  std::fabs(*report.reversal_threshold - 0.00990) <= 1e-5,
              "reversal threshold is not 0.00990 within 1e-5", detail);
  ok &= check(report.link.has_value(), "signal-link demo missing from the report", detail);
  if (report.link) {
    ok &= check(std::fabs(report.link->dt_prime - (-0.356)) <= 1e-3,
                "dt' = " + format_sig9(report.link->dt_prime) + " s, expected -0.356 s",
                detail);
    ok &= check(std::fabs(report.link->gamma - 5.025) <= 1e-3,
                "gamma = " + format_sig9(report.link->gamma) + ", expected 5.025", detail);
  }
  return ok;
}

// 6. Property suites: interval invariance, boost composition, exact e + f,
// the mismatch triangle bound, and the order-reversal threshold test.
bool criterion_invariants(std::string& detail) {
  bool ok = true;
  TrialRng rng(1905);

  // Interval invariance and boost composition, 1e-9 relative.
  for (int rep = 0; rep < 2000 && ok; ++rep) {
    const SpacetimeEvent e1{(rng.next_unit() - 0.5) * 2e3, (rng.next_unit() - 0.5) * 2e-5, ""};
    const SpacetimeEvent e2{(rng.next_unit() - 0.5) * 2e3, (rng.next_unit() - 0.5) * 2e-5, ""};
    const double b1 = (rng.next_unit() - 0.5) * 1.9;
    const double b2 = (rng.next_unit() - 0.5) * 1.9;

    const auto s2 = [](const SpacetimeEvent& p, const SpacetimeEvent& q) {
      const double dt = kDefaultLightSpeed * (q.t - p.t);
      const double dx = q.x - p.x;
      return dt * dt - dx * dx;
    };
    const InertialFrame frame(b1);
    const double lab = s2(e1, e2);
    const double boosted = s2(lorentz_transform(e1, frame), lorentz_transform(e2, frame));
    const double scale = std::max({std::fabs(lab),
                                   std::pow(kDefaultLightSpeed * (e2.t - e1.t), 2),
                                   std::pow(e2.x - e1.x, 2), 1.0});
    ok &= check(std::fabs(lab - boosted) <= 1e-9 * scale,
                "squared interval drifted more than 1e-9 under a boost", detail);

    const double combined = (b1 + b2) / (1.0 + b1 * b2);
    const SpacetimeEvent two_step =
        lorentz_transform(lorentz_transform(e1, InertialFrame(b1)), InertialFrame(b2));
    const SpacetimeEvent one_step = lorentz_transform(e1, InertialFrame(combined));
    const double span = std::max({std::fabs(one_step.x),
                                  kDefaultLightSpeed * std::fabs(one_step.t), 1.0});
    ok &= check(std::fabs(two_step.x - one_step.x) <= 1e-9 * span &&
                    kDefaultLightSpeed * std::fabs(two_step.t - one_step.t) <= 1e-9 * span,
                "boost composition drifted more than 1e-9", detail);
  }

  // e + f == 1 exactly on recorded series from both models and all stages.
  for (const Model model : {Model::qm, Model::lhv_threshold}) {
    for (int stage = 1; stage <= 4; ++stage) {
      ExperimentConfig config;
      config.model = model;
      config.theta = Angle(27.5);
      config.trials = 20000;
      config.seed = 1789;
      const StageResult result = run_stage(config, stage, 2);
      ok &= check(result.stats.e + result.stats.f == 1.0,
                  "e + f != 1 exactly on a recorded series", detail);
    }
  }

  // Triangle bound over 1000+ random series triples.
  int triples = 0;
  for (int rep = 0; rep < 1200; ++rep) {
    OutcomeSeries a;
    OutcomeSeries b;
    OutcomeSeries c;
    for (int i = 0; i < 60; ++i) {
      a.push_back(rng.next_below(2) != 0);
      b.push_back(rng.next_below(2) != 0);
      c.push_back(rng.next_below(2) != 0);
    }
    const double e_ab = mismatch_fraction(a, b).e;
    const double e_ca = mismatch_fraction(c, a).e;
    const double e_cb = mismatch_fraction(c, b).e;
    ok &= check(e_ab <= e_ca + e_cb + 1e-15, "triangle bound violated", detail);
    ++triples;
  }
  ok &= check(triples >= 1000, "fewer than 1000 triples exercised", detail);

  // Order reversal happens exactly past the threshold, across a beta grid.
  int spacelike_pairs = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const SpacetimeEvent e1{(rng.next_unit() - 0.5) * 2e3, (rng.next_unit() - 0.5) * 2e-5, ""};
    const SpacetimeEvent e2{(rng.next_unit() - 0.5) * 2e3, (rng.next_unit() - 0.5) * 2e-5, ""};
    if (std::fabs(e1.x - e2.x) < 1.0 || std::fabs(e1.t - e2.t) < 1e-9) continue;
    if (classify_interval(e1, e2) != IntervalClass::spacelike) continue;
    ++spacelike_pairs;
    const double threshold = reversal_threshold_beta(e1, e2);
    for (double beta = -0.95; beta <= 0.951; beta += 0.05) {
      if (std::fabs(-beta - threshold) < 1e-6 * (1.0 + std::fabs(threshold))) continue;
      const InertialFrame frame(beta);
      const bool flipped = ((e2.t - e1.t) > 0.0) !=
                           ((lorentz_transform(e2, frame).t - lorentz_transform(e1, frame).t) > 0.0);
      ok &= check(boost_reverses_order(threshold, beta) == flipped,
                  "reversal test disagreed with an actual boost at beta = " +
                      format_sig9(beta),
                  detail);
    }
  }
  ok &= check(spacelike_pairs >= 30, "too few spacelike pairs sampled", detail);
  return ok;
}

// 7. Byte-identical sweep CSV from the CLI for different worker counts.
bool criterion_determinism(const std::string& cli_path, std::string& detail) {
  if (cli_path.empty()) {
    detail = "path to the CLI binary was not passed as argv[1]";
    return false;
  }
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("bellsim-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path csv1 = dir / "sweep-threads1.csv";
  const fs::path csv2 = dir / "sweep-threads4.csv";

  const auto run_cli = [&](int threads, const fs::path& out) {
    std::ostringstream cmd;
    cmd << '"' << cli_path << '"'
        << " sweep --model qm --theta-start 5 --theta-end 45 --theta-step 5 --gap-mode"
        << " --trials 20000 --seed 7 --threads " << threads << " --out " << out
        << " > /dev/null";
    return std::system(cmd.str().c_str());
  };
  const int rc1 = run_cli(1, csv1);
  const int rc4 = run_cli(4, csv2);

  bool ok = true;
  ok &= check(rc1 == 0 && rc4 == 0, "CLI sweep returned a nonzero exit code", detail);
  std::string bytes1;
  std::string bytes2;
  if (ok) {
    std::ifstream in1(csv1, std::ios::binary);
    std::ifstream in2(csv2, std::ios::binary);
    std::ostringstream buf1;
    std::ostringstream buf2;
    buf1 << in1.rdbuf();
    buf2 << in2.rdbuf();
    bytes1 = buf1.str();
    bytes2 = buf2.str();
    ok &= check(in1.good() && in2.good() && !bytes1.empty(), "could not read the CSV outputs",
                detail);
  }
  ok &= check(ok && bytes1 == bytes2,
              "CSV bytes differ between --threads 1 and --threads 4", detail);
  std::error_code ignore;
  fs::remove_all(dir, ignore);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {"analytic mismatch values at 30 and 60 degrees", criterion_analytic},
      {"quantum Monte Carlo violates the inequality at theta = 30", criterion_qm_violation},
      {"threshold model tracks theta/90 and never violates", criterion_lhv_compliance},
      {"exhaustive flip-set audit at n = 12, k = 4", criterion_series_oracle},
      {"boosted-frame regression values", criterion_relativity_regression},
      {"numerical and statistical invariant suites", criterion_invariants},
      {"byte-identical sweep CSV across worker counts",
       [&cli_path](std::string& detail) { return criterion_determinism(cli_path, detail); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].name << '\n';
    if (!ok) {
      ++failures;
      std::cerr << "      -> " << detail << '\n';
    }
  }
  return failures == 0 ? 0 : 1;
}
