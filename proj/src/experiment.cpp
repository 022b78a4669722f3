#include "bellsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "bellsim/errors.hpp"
#include "bellsim/quantum.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

namespace {

// Substream roles. Stages occupy their own ids 1..4; everything else gets a
// disjoint block so no two run kinds ever share a trial stream.
constexpr std::uint64_t kSweepRoleBase = 100;   // + 2*row (curve), + 2*row + 1 (2 theta)
constexpr std::uint64_t kSeriesBaseRole = 50;   // base series bits
constexpr std::uint64_t kSeriesSampleRole = 51; // sampled flip-set pairs

struct PairedBits {
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;
};

PairedBits run_paired_trials(Model model, Angle axis_a, Angle axis_b, std::uint64_t trials,
                             std::uint64_t seed, std::uint64_t role,
                             const std::optional<Angle>& fixed_phi, bool measure_a_first,
                             int threads) {
  PairedBits out{std::vector<std::uint8_t>(trials), std::vector<std::uint8_t>(trials)};
  const auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      TrialRng rng = substream(seed, role, i);
      const Angle hidden = fixed_phi ? *fixed_phi : Angle(rng.next_angle_deg());
      TrialOutcome outcome;
      if (model == Model::qm) {
        PairState pair{hidden, std::nullopt};
        outcome = sample_trial_qm(pair, axis_a, axis_b, measure_a_first, rng);
      } else {
        outcome = sample_trial_lhv(HiddenPairState{hidden}, axis_a, axis_b);
      }
      out.a[i] = outcome.bit_a ? 1 : 0;
      out.b[i] = outcome.bit_b ? 1 : 0;
    }
  };

  const int worker_count = std::max(1, threads);
  if (worker_count == 1 || trials < 2) {
    worker(0, trials);
    return out;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (trials + worker_count - 1) / worker_count;
  for (int w = 0; w < worker_count; ++w) {
    const std::uint64_t lo = std::min<std::uint64_t>(trials, chunk * w);
    const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
    if (lo < hi) {
      pool.emplace_back(worker, lo, hi);
    }
  }
  for (std::thread& t : pool) {
    t.join();
  }
  return out;
}

void validate_config(const ExperimentConfig& config, double max_theta_deg) {
  if (config.trials == 0) {
    throw std::invalid_argument("trials must be at least 1");
  }
  if (config.theta.deg() > max_theta_deg) {
    throw std::invalid_argument("theta must lie in [0, " +
                                std::to_string(static_cast<int>(max_theta_deg)) + "] degrees");
  }
}

std::pair<Angle, Angle> stage_axes(int stage, Angle theta) {
  switch (stage) {
    case 1: return {Angle(0.0), Angle(0.0)};
    case 2: return {Angle(0.0), theta};
    case 3: return {Angle(-theta.deg()), Angle(0.0)};
    case 4: return {Angle(-theta.deg()), theta};
    default: throw std::invalid_argument("stage must be 1, 2, 3 or 4");
  }
}

}  // namespace

std::optional<Angle> parse_phi_policy(std::string_view text) {
  if (text == "uniform") {
    return std::nullopt;
  }
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string_view value = text.substr(prefix.size());
    double degrees = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, degrees);
    if (ec == std::errc() && ptr == end && !value.empty()) {
      return Angle(degrees);
    }
  }
  throw std::invalid_argument("phi policy must be 'uniform' or 'fixed:<degrees>'");
}

std::string phi_policy_to_string(const std::optional<Angle>& fixed_phi) {
  if (!fixed_phi) {
    return "uniform";
  }
  return "fixed:" + format_sig9(fixed_phi->deg());
}

ExperimentConfig config_from_json(const std::string& json_text) {
  ExperimentConfig config;
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.is_object()) {
      throw std::invalid_argument("config must be a JSON object");
    }
    static const std::set<std::string> known = {"model",  "theta",      "trials",
                                                "seed",   "phi_policy", "measure_a_first"};
    for (const auto& item : j.items()) {
      if (!known.contains(item.key())) {
        throw std::invalid_argument("unknown config key: " + item.key());
      }
    }
    if (j.contains("model")) config.model = parse_model(j.at("model").get<std::string>());
    if (j.contains("theta")) config.theta = Angle(j.at("theta").get<double>());
    if (j.contains("trials")) config.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("phi_policy")) {
      config.fixed_phi = parse_phi_policy(j.at("phi_policy").get<std::string>());
    }
    if (j.contains("measure_a_first")) {
      config.measure_a_first = j.at("measure_a_first").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid config JSON: ") + e.what());
  }
  return config;
}

StageResult run_stage(const ExperimentConfig& config, int stage, int threads) {
  validate_config(config, 90.0);
  const auto [axis_a, axis_b] = stage_axes(stage, config.theta);
  PairedBits bits = run_paired_trials(config.model, axis_a, axis_b, config.trials, config.seed,
                                      static_cast<std::uint64_t>(stage), config.fixed_phi,
                                      config.measure_a_first, threads);
  StageResult result;
  result.stage = stage;
  result.axis_a = axis_a;
  result.axis_b = axis_b;
  result.series_a = OutcomeSeries(std::move(bits.a));
  result.series_b = OutcomeSeries(std::move(bits.b));
  result.stats = mismatch_fraction(result.series_a, result.series_b);
  return result;
}

std::vector<SweepRow> run_sweep(const SweepOptions& options) {
  const double max_theta = options.gap_mode ? 45.0 : 90.0;
  if (options.base.trials == 0) {
    throw std::invalid_argument("trials must be at least 1");
  }
  for (Angle theta : options.grid) {
    if (theta.deg() > max_theta) {
      throw std::invalid_argument(options.gap_mode
                                      ? "gap-mode sweep requires theta in [0, 45] degrees"
                                      : "sweep requires theta in [0, 90] degrees");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(options.grid.size());
  for (std::size_t r = 0; r < options.grid.size(); ++r) {
    const Angle theta = options.grid[r];
    SweepRow row;
    row.theta = theta;
    PairedBits curve = run_paired_trials(options.base.model, Angle(0.0), theta,
                                         options.base.trials, options.base.seed,
                                         kSweepRoleBase + 2 * r, options.base.fixed_phi,
                                         options.base.measure_a_first, options.threads);
    row.mc = mismatch_fraction(OutcomeSeries(std::move(curve.a)),
                               OutcomeSeries(std::move(curve.b)));
    row.qm_analytic = analytic_mismatch_qm(theta);
    row.line_analytic = analytic_mismatch_lhv_threshold(theta);
    if (options.gap_mode) {
      PairedBits doubled = run_paired_trials(options.base.model, Angle(-theta.deg()), theta,
                                             options.base.trials, options.base.seed,
                                             kSweepRoleBase + 2 * r + 1, options.base.fixed_phi,
                                             options.base.measure_a_first, options.threads);
      row.mc_2theta = mismatch_fraction(OutcomeSeries(std::move(doubled.a)),
                                        OutcomeSeries(std::move(doubled.b)));
      row.gap = bell_gap(theta, row.mc, *row.mc_2theta);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool gap_mode) {
  out << "theta_deg,e_mc,ci3,e_qm_analytic,e_line_analytic,n_trials";
  if (gap_mode) {
    out << ",e2_mc,gap,verdict";
  }
  out << '\n';
  for (const SweepRow& row : rows) {
    out << format_sig9(row.theta.deg()) << ',' << format_sig9(row.mc.e) << ','
        << format_sig9(row.mc.ci_half_width) << ',' << format_sig9(row.qm_analytic) << ','
        << format_sig9(row.line_analytic) << ',' << row.mc.n;
    if (gap_mode) {
      ensure_invariant(row.mc_2theta.has_value() && row.gap.has_value(),
                       "gap-mode rows must carry the doubled-angle estimate");
      out << ',' << format_sig9(row.mc_2theta->e) << ',' << format_sig9(row.gap->gap) << ','
          << to_string(row.gap->verdict);
    }
    out << '\n';
  }
  if (!out) {
    throw std::invalid_argument("cannot write sweep output");
  }
}

std::vector<Angle> make_theta_grid(double start_deg, double end_deg, double step_deg) {
  if (!(step_deg > 0.0)) {
    throw std::invalid_argument("theta step must be positive");
  }
  if (end_deg < start_deg) {
    throw std::invalid_argument("theta range is empty");
  }
  // Count-based so accumulated rounding cannot drop or duplicate the endpoint.
  const auto count =
      static_cast<std::size_t>(std::floor((end_deg - start_deg) / step_deg + 1e-9)) + 1;
  std::vector<Angle> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // The last point may overshoot end_deg by a rounding error for fractional
    // steps; clamp so the grid always respects the requested range.
    grid.emplace_back(std::min(start_deg + static_cast<double>(i) * step_deg, end_deg));
  }
  return grid;
}

SeriesDemoReport run_series_demo(const SeriesDemoOptions& options) {
  const std::size_t n = options.n;
  const std::size_t k = options.k;
  if (n == 0) {
    throw std::invalid_argument("series length must be at least 1");
  }
  if (k > n) {
    throw std::invalid_argument("cannot flip more positions than the series has");
  }
  if (options.exhaustive && n > 16) {
    throw std::invalid_argument("exhaustive enumeration requires n <= 16");
  }
  if (!options.exhaustive && n > 1000000) {
    throw std::invalid_argument("sampled mode supports n <= 1000000");
  }
  if (!options.exhaustive && options.samples == 0) {
    throw std::invalid_argument("sampled mode needs at least one sample");
  }

  SeriesDemoReport report;
  report.options = options;

  TrialRng base_rng = substream(options.seed, kSeriesBaseRole, 0);
  std::vector<std::uint8_t> base_bits(n);
  for (std::uint8_t& bit : base_bits) {
    bit = static_cast<std::uint8_t>(base_rng.next_u64() & 1);
  }
  report.base = OutcomeSeries(std::move(base_bits));
  report.base_mismatch = static_cast<double>(k) / static_cast<double>(n);

  if (options.exhaustive) {
    report.distribution = enumerate_flip_mismatches(report.base, k);
    return report;
  }

  // Sampled mode: Floyd's subset sampling per side, overlap counted through
  // epoch-stamped membership so each sample costs O(k).
  FlipMismatchDistribution dist;
  dist.n = n;
  dist.k = k;
  dist.total_pairs = options.samples;
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<std::uint64_t> stamp_a(n, 0);
  std::vector<std::uint64_t> stamp_b(n, 0);
  const auto draw_subset = [&](TrialRng& rng, std::vector<std::uint64_t>& stamp,
                               std::uint64_t epoch) {
    for (std::size_t j = n - k; j < n; ++j) {
      const auto pick = static_cast<std::size_t>(rng.next_below(j + 1));
      const std::size_t chosen = stamp[pick] == epoch ? j : pick;
      stamp[chosen] = epoch;
    }
  };
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    TrialRng rng = substream(options.seed, kSeriesSampleRole, s);
    const std::uint64_t epoch = s + 1;
    if (k > 0) {
      draw_subset(rng, stamp_a, epoch);
      draw_subset(rng, stamp_b, epoch);
    }
    std::size_t overlap = 0;
    if (k > 0) {
      for (std::size_t pos = 0; pos < n; ++pos) {
        overlap += stamp_a[pos] == epoch && stamp_b[pos] == epoch;
      }
    }
    counts[2 * (k - overlap)] += 1;
  }
  for (std::size_t d = 0; d <= n; ++d) {
    if (counts[d] != 0) {
      dist.pair_counts.emplace(d, counts[d]);
    }
  }
  ensure_invariant(dist.within_bell_bound(), "flip-pair mismatch exceeded the 2k/n bound");
  report.distribution = std::move(dist);
  return report;
}

RelativityReport run_relativity_example(const RelativityScenario& scenario) {
  const InertialFrame frame(scenario.frame_beta);
  RelativityReport report;
  report.scenario = scenario;
  report.event1_boosted = lorentz_transform(scenario.event1, frame, scenario.c);
  report.event2_boosted = lorentz_transform(scenario.event2, frame, scenario.c);
  report.gamma = frame.gamma();
  report.interval = classify_interval(scenario.event1, scenario.event2, scenario.c);
  if (scenario.event1.x != scenario.event2.x) {
    report.reversal_threshold =
        reversal_threshold_beta(scenario.event1, scenario.event2, scenario.c);
  }
  report.rest_frame = classify_causal_relation(scenario.event1, scenario.event2,
                                               scenario.entangled, InertialFrame(0.0),
                                               scenario.c);
  report.boosted_frame = classify_causal_relation(scenario.event1, scenario.event2,
                                                  scenario.entangled, frame, scenario.c);
  if (scenario.link_demo) {
    const SignalLinkDemo& demo = *scenario.link_demo;
    const InertialFrame link_frame(demo.frame_beta);
    SignalLinkResult link_result;
    link_result.demo = demo;
    link_result.link = SignalLink::from_speed(demo.u_over_c, demo.delta_x, scenario.c);
    link_result.gamma = link_frame.gamma();
    link_result.dt_prime = delta_t_prime(link_result.link, link_frame, scenario.c);
    report.link = link_result;
  }
  return report;
}

namespace {

void print_event_line(std::ostream& out, const char* name, const SpacetimeEvent& event) {
  out << "  " << name << "  x = " << format_sig9(event.x)
      << " m, t = " << format_sig9(event.t * 1e9) << " ns";
  if (!event.label.empty()) {
    out << "  (" << event.label << ")";
  }
  out << '\n';
}

}  // namespace

void print_relativity_report(std::ostream& out, const RelativityReport& report) {
  const RelativityScenario& sc = report.scenario;
  out << "rest frame S (c = " << format_sig9(sc.c) << " m/s):\n";
  print_event_line(out, "event 1", sc.event1);
  print_event_line(out, "event 2", sc.event2);
  out << "boosted frame S' (beta = " << format_sig9(sc.frame_beta)
      << ", gamma = " << format_sig9(report.gamma) << "):\n";
  print_event_line(out, "event 1", report.event1_boosted);
  print_event_line(out, "event 2", report.event2_boosted);
  out << "interval:  " << to_string(report.interval) << '\n';
  out << "ordering:  S: " << to_string(report.rest_frame.ordering)
      << "; S': " << to_string(report.boosted_frame.ordering) << '\n';
  if (report.reversal_threshold) {
    const double thr = *report.reversal_threshold;
    out << "reversal:  threshold beta = " << format_sig9(thr) << " (order flips for -beta "
        << (thr >= 0.0 ? "> " : "< ") << format_sig9(thr) << ")\n";
  } else {
    out << "reversal:  threshold undefined (events share one position)\n";
  }
  out << "relation:  " << to_string(report.rest_frame.relation) << '\n';
  if (report.link) {
    const SignalLinkResult& link = *report.link;
    out << "signal:    u/c = " << format_sig9(link.demo.u_over_c)
        << " over dx = " << format_sig9(link.link.delta_x)
        << " m: dt = " << format_sig9(link.link.delta_t)
        << " s, dt' = " << format_sig9(link.dt_prime) << " s at beta = "
        << format_sig9(link.demo.frame_beta) << " (gamma = " << format_sig9(link.gamma)
        << ")\n";
  }
  if (!out) {
    throw std::invalid_argument("cannot write relativity report");
  }
}

}  // namespace bellsim
