#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/hidden_variables.hpp"
#include "bellsim/relativity.hpp"
#include "bellsim/statistics.hpp"

namespace bellsim {

/// One Monte Carlo run description. fixed_phi pins the pair's shared hidden
/// angle (QM polarization phi / hidden-variable lambda); nullopt draws it
/// uniformly from [0, 180) per pair.
struct ExperimentConfig {
  Model model = Model::qm;
  Angle theta;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::optional<Angle> fixed_phi;
  bool measure_a_first = true;
};

/// Parse "uniform" or "fixed:<degrees>".
std::optional<Angle> parse_phi_policy(std::string_view text);
std::string phi_policy_to_string(const std::optional<Angle>& fixed_phi);

/// Build an ExperimentConfig from a JSON object whose keys mirror the struct
/// fields (model, theta, trials, seed, phi_policy, measure_a_first). Unknown
/// keys are rejected.
ExperimentConfig config_from_json(const std::string& json_text);

/// Polarizer placements:
///   stage 1: both upright        (0, 0)
///   stage 2: B rotated by theta  (0, theta)
///   stage 3: A rotated by -theta (-theta, 0)
///   stage 4: both rotated apart  (-theta, +theta)
struct StageResult {
  int stage = 0;
  Angle axis_a;
  Angle axis_b;
  MismatchStats stats;
  OutcomeSeries series_a;
  OutcomeSeries series_b;
};

/// Run one stage. theta must lie in [0, 90] degrees, trials >= 1. Identical
/// (config, stage) pairs produce identical series for any thread count: trial
/// i always draws from substream(seed, stage, i).
StageResult run_stage(const ExperimentConfig& config, int stage, int threads = 1);

struct SweepRow {
  Angle theta;
  MismatchStats mc;            // Monte Carlo estimate at separation theta
  double qm_analytic = 0.0;    // sin^2 theta
  double line_analytic = 0.0;  // theta / 90
  std::optional<MismatchStats> mc_2theta;  // gap mode: estimate at 2 theta
  std::optional<BellGapReport> gap;
};

struct SweepOptions {
  ExperimentConfig base;     // theta is taken from the grid row by row
  std::vector<Angle> grid;   // [0, 90] degrees; [0, 45] in gap mode
  bool gap_mode = false;
  int threads = 1;
};

std::vector<SweepRow> run_sweep(const SweepOptions& options);

/// CSV schema (UTF-8, LF, 9 significant digits):
///   theta_deg,e_mc,ci3,e_qm_analytic,e_line_analytic,n_trials[,e2_mc,gap,verdict]
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool gap_mode);

/// Inclusive grid start, start + step, ... up to end (step > 0).
std::vector<Angle> make_theta_grid(double start_deg, double end_deg, double step_deg);

struct SeriesDemoOptions {
  std::size_t n = 12;
  std::size_t k = 4;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::uint64_t samples = 100000;  // sampled mode only
};

struct SeriesDemoReport {
  SeriesDemoOptions options;
  OutcomeSeries base;
  FlipMismatchDistribution distribution;  // exact counts or sampled tallies
  double base_mismatch = 0.0;             // mismatch(base, flipped) = k / n, both sides
};

/// Flip-set mismatch audit. Exhaustive mode enumerates all C(n, k)^2 pairs
/// (n <= 16); sampled mode tallies `samples` random pairs. Both verify the
/// 2k/n mismatch cap and fail with invariant_violation if it ever breaks.
SeriesDemoReport run_series_demo(const SeriesDemoOptions& options);

/// A signal at u = u_over_c * c crossing delta_x, watched from a frame at
/// frame_beta. Defaults reproduce the superluminal bookkeeping example:
/// u = 1.1 c over one light-second, seen from beta = 0.98.
struct SignalLinkDemo {
  double u_over_c = 1.1;
  double delta_x = kDefaultLightSpeed * 1.0;
  double frame_beta = 0.98;
};

/// Two detection events on a shared x axis plus a boosted observer. Defaults
/// are the built-in "paper" scenario: detectors 15 m and -15.3 m from the
/// source registering 1 ns apart, watched from a frame at beta = -0.6.
struct RelativityScenario {
  SpacetimeEvent event1{15.0, 50e-9, "detection at A"};
  SpacetimeEvent event2{-15.3, 51e-9, "detection at B"};
  double frame_beta = -0.6;
  bool entangled = true;
  double c = kDefaultLightSpeed;
  std::optional<SignalLinkDemo> link_demo = SignalLinkDemo{};
};

struct SignalLinkResult {
  SignalLinkDemo demo;
  SignalLink link;
  double gamma = 0.0;
  double dt_prime = 0.0;
};

struct RelativityReport {
  RelativityScenario scenario;
  SpacetimeEvent event1_boosted;
  SpacetimeEvent event2_boosted;
  double gamma = 0.0;
  IntervalClass interval = IntervalClass::spacelike;
  std::optional<double> reversal_threshold;  // nullopt when x1 == x2
  CausalClassification rest_frame;
  CausalClassification boosted_frame;
  std::optional<SignalLinkResult> link;
};

RelativityReport run_relativity_example(const RelativityScenario& scenario);
void print_relativity_report(std::ostream& out, const RelativityReport& report);

/// Number formatted with 9 significant digits ("%.9g"), the CSV convention.
std::string format_sig9(double value);

}  // namespace bellsim
