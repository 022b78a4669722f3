#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellsim/errors.hpp"
#include "bellsim/experiment.hpp"
#include "bellsim/quantum.hpp"

namespace {

using bellsim::Angle;
using bellsim::format_sig9;
using nlohmann::json;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw std::invalid_argument("cannot write output file: " + path);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json stats_to_json(const bellsim::MismatchStats& stats) {
  return {{"n", stats.n},
          {"mismatches", stats.mismatches},
          {"e", stats.e},
          {"f", stats.f},
          {"ci3", stats.ci_half_width}};
}

struct StageCli {
  std::string model = "qm";
  int stage = 2;
  double theta_deg = 0.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string phi = "uniform";
  bool measure_a_first = true;
  int threads = 1;
  std::string config_path;
  std::string out_path;
};

int run_stage_command(const StageCli& cli, const CLI::App* parsed) {
  bellsim::ExperimentConfig config;
  if (!cli.config_path.empty()) {
    config = bellsim::config_from_json(read_text_file(cli.config_path));
  }
  // Explicit flags win over config-file values.
  const auto given = [parsed](const std::string& flag) { return parsed->count(flag) > 0; };
  if (cli.config_path.empty() || given("--model")) config.model = bellsim::parse_model(cli.model);
  if (cli.config_path.empty() || given("--theta-deg")) config.theta = Angle(cli.theta_deg);
  if (cli.config_path.empty() || given("--trials")) config.trials = cli.trials;
  if (cli.config_path.empty() || given("--seed")) config.seed = cli.seed;
  if (cli.config_path.empty() || given("--phi")) {
    config.fixed_phi = bellsim::parse_phi_policy(cli.phi);
  }
  if (cli.config_path.empty() || given("--measure-a-first") || given("--measure-b-first")) {
    config.measure_a_first = cli.measure_a_first;
  }

  const bellsim::StageResult result = bellsim::run_stage(config, cli.stage, cli.threads);
  const double analytic = config.model == bellsim::Model::qm
                              ? bellsim::analytic_mismatch_qm(
                                    bellsim::relative_angle(result.axis_a, result.axis_b))
                              : bellsim::analytic_mismatch_lhv_threshold(
                                    bellsim::relative_angle(result.axis_a, result.axis_b));

  std::cout << "model " << to_string(config.model) << ", stage " << result.stage << ", axes ("
            << format_sig9(result.axis_a.deg()) << ", " << format_sig9(result.axis_b.deg())
            << ") deg, trials " << config.trials << ", seed " << config.seed << '\n'
            << "  mismatches " << result.stats.mismatches << "  e = "
            << format_sig9(result.stats.e) << "  f = " << format_sig9(result.stats.f)
            << "  ci3 = " << format_sig9(result.stats.ci_half_width) << '\n'
            << "  analytic e = " << format_sig9(analytic) << '\n';

  if (!cli.out_path.empty()) {
    json j{{"model", to_string(config.model)},
           {"stage", result.stage},
           {"axis_a_deg", result.axis_a.deg()},
           {"axis_b_deg", result.axis_b.deg()},
           {"theta_deg", config.theta.deg()},
           {"trials", config.trials},
           {"seed", config.seed},
           {"phi_policy", bellsim::phi_policy_to_string(config.fixed_phi)},
           {"measure_a_first", config.measure_a_first},
           {"stats", stats_to_json(result.stats)},
           {"analytic_e", analytic}};
    write_text_file(cli.out_path, j.dump(2) + "\n");
  }
  return 0;
}

struct SweepCli {
  std::string model = "qm";
  double theta_start = 0.0;
  double theta_end = 90.0;
  double theta_step = 5.0;
  bool gap_mode = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string phi = "uniform";
  bool measure_a_first = true;
  int threads = 1;
  std::string out_path;
};

int run_sweep_command(const SweepCli& cli) {
  bellsim::SweepOptions options;
  options.base.model = bellsim::parse_model(cli.model);
  options.base.trials = cli.trials;
  options.base.seed = cli.seed;
  options.base.fixed_phi = bellsim::parse_phi_policy(cli.phi);
  options.base.measure_a_first = cli.measure_a_first;
  options.grid = bellsim::make_theta_grid(cli.theta_start, cli.theta_end, cli.theta_step);
  options.gap_mode = cli.gap_mode;
  options.threads = cli.threads;

  const std::vector<bellsim::SweepRow> rows = bellsim::run_sweep(options);

  std::cout << "theta_deg      e_mc       ci3        sin^2      theta/90";
  if (cli.gap_mode) {
    std::cout << "   e2_mc      gap        verdict";
  }
  std::cout << '\n';
  for (const bellsim::SweepRow& row : rows) {
    std::printf("%-9s  %-9s  %-9s  %-9s  %-9s", format_sig9(row.theta.deg()).c_str(),
                format_sig9(row.mc.e).c_str(), format_sig9(row.mc.ci_half_width).c_str(),
                format_sig9(row.qm_analytic).c_str(), format_sig9(row.line_analytic).c_str());
    if (cli.gap_mode) {
      std::printf("  %-9s  %-9s  %s", format_sig9(row.mc_2theta->e).c_str(),
                  format_sig9(row.gap->gap).c_str(),
                  std::string(to_string(row.gap->verdict)).c_str());
    }
    std::printf("\n");
  }

  if (!cli.out_path.empty()) {
    std::ostringstream csv;
    bellsim::write_sweep_csv(csv, rows, cli.gap_mode);
    write_text_file(cli.out_path, csv.str());
  }
  return 0;
}

struct SeriesCli {
  std::size_t n = 12;
  std::size_t k = 4;
  std::string mode = "sampled";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_series_command(const SeriesCli& cli) {
  if (cli.mode != "sampled" && cli.mode != "exhaustive") {
    throw std::invalid_argument("mode must be sampled or exhaustive");
  }
  bellsim::SeriesDemoOptions options;
  options.n = cli.n;
  options.k = cli.k;
  options.seed = cli.seed;
  options.exhaustive = cli.mode == "exhaustive";
  options.samples = cli.samples;

  const bellsim::SeriesDemoReport report = bellsim::run_series_demo(options);
  const auto& dist = report.distribution;

  std::string base_string;
  for (std::size_t i = 0; i < report.base.size(); ++i) {
    base_string += static_cast<char>('0' + report.base[i]);
  }
  std::cout << "base series " << base_string << " (n = " << options.n << ", k = " << options.k
            << ", " << cli.mode << ")\n"
            << "mismatch(base, flipped) = " << format_sig9(report.base_mismatch)
            << " on both sides\n"
            << "mismatch(a, b) over " << dist.total_pairs << " flip-set pairs:\n";
  for (const auto& [differing, pairs] : dist.pair_counts) {
    std::cout << "  " << format_sig9(static_cast<double>(differing) / static_cast<double>(dist.n))
              << "  (" << differing << " positions)  " << pairs << " pairs\n";
  }
  std::cout << "max " << format_sig9(dist.max_fraction()) << ", min "
            << format_sig9(dist.min_fraction()) << ", bound 2k/n = "
            << format_sig9(dist.bell_bound())
            << (dist.within_bell_bound() ? " (satisfied)" : " (VIOLATED)") << '\n';

  if (!cli.out_path.empty()) {
    json cells = json::array();
    for (const auto& [differing, pairs] : dist.pair_counts) {
      cells.push_back({{"differing_positions", differing},
                       {"fraction", static_cast<double>(differing) / static_cast<double>(dist.n)},
                       {"pairs", pairs}});
    }
    json j{{"n", dist.n},
           {"k", dist.k},
           {"mode", cli.mode},
           {"seed", options.seed},
           {"base", base_string},
           {"base_mismatch", report.base_mismatch},
           {"total_pairs", dist.total_pairs},
           {"distribution", cells},
           {"max", dist.max_fraction()},
           {"min", dist.min_fraction()},
           {"bound", dist.bell_bound()},
           {"bound_satisfied", dist.within_bell_bound()}};
    write_text_file(cli.out_path, j.dump(2) + "\n");
  }
  return 0;
}

struct RelativityCli {
  std::string scenario = "paper";
  double x1 = 15.0;
  double t1_ns = 50.0;
  double x2 = -15.3;
  double t2_ns = 51.0;
  double beta = -0.6;
  std::optional<double> u_over_c;
  bool entangled = true;
  bool c_exact = true;
  std::string out_path;
};

int run_relativity_command(const RelativityCli& cli, const CLI::App* parsed) {
  bellsim::RelativityScenario scenario;  // defaults match --scenario paper
  scenario.c = cli.c_exact ? bellsim::kDefaultLightSpeed : bellsim::kLightSpeedSi;
  if (cli.scenario == "custom") {
    scenario.event1 = {cli.x1, cli.t1_ns * 1e-9, "event 1"};
    scenario.event2 = {cli.x2, cli.t2_ns * 1e-9, "event 2"};
    scenario.frame_beta = cli.beta;
    scenario.entangled = cli.entangled;
    scenario.link_demo.reset();
    if (cli.u_over_c) {
      scenario.link_demo = bellsim::SignalLinkDemo{*cli.u_over_c,
                                                   scenario.event2.x - scenario.event1.x,
                                                   scenario.frame_beta};
    }
  } else if (cli.scenario == "paper") {
    if (parsed->count("--beta") > 0) {
      scenario.frame_beta = cli.beta;
    }
    if (parsed->count("--u-over-c") > 0) {
      scenario.link_demo->u_over_c = *cli.u_over_c;
    }
  } else {
    throw std::invalid_argument("scenario must be paper or custom");
  }

  const bellsim::RelativityReport report = bellsim::run_relativity_example(scenario);
  bellsim::print_relativity_report(std::cout, report);

  if (!cli.out_path.empty()) {
    const auto event_json = [](const bellsim::SpacetimeEvent& event) {
      return json{{"x_m", event.x}, {"t_ns", event.t * 1e9}, {"label", event.label}};
    };
    json j{{"c_m_per_s", scenario.c},
           {"frame_beta", scenario.frame_beta},
           {"gamma", report.gamma},
           {"events_rest", json::array({event_json(scenario.event1), event_json(scenario.event2)})},
           {"events_boosted",
            json::array({event_json(report.event1_boosted), event_json(report.event2_boosted)})},
           {"interval", to_string(report.interval)},
           {"relation", to_string(report.rest_frame.relation)},
           {"ordering_rest", to_string(report.rest_frame.ordering)},
           {"ordering_boosted", to_string(report.boosted_frame.ordering)}};
    if (report.reversal_threshold) {
      j["reversal_threshold_beta"] = *report.reversal_threshold;
    }
    if (report.link) {
      j["signal_link"] = {{"u_over_c", report.link->demo.u_over_c},
                          {"delta_x_m", report.link->link.delta_x},
                          {"delta_t_s", report.link->link.delta_t},
                          {"frame_beta", report.link->demo.frame_beta},
                          {"gamma", report.link->gamma},
                          {"delta_t_prime_s", report.link->dt_prime}};
    }
    write_text_file(cli.out_path, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-experiment Monte Carlo simulator and relativity toolkit"};
  app.require_subcommand(1);

  StageCli stage_cli;
  CLI::App* stage = app.add_subcommand("stage", "run one polarizer stage");
  stage->add_option("--model", stage_cli.model, "qm or lhv_threshold");
  stage->add_option("--stage", stage_cli.stage, "stage number 1-4")->check(CLI::Range(1, 4));
  stage->add_option("--theta-deg", stage_cli.theta_deg, "polarizer rotation in degrees [0, 90]");
  stage->add_option("--trials", stage_cli.trials, "number of photon pairs");
  stage->add_option("--seed", stage_cli.seed, "master seed");
  stage->add_option("--phi", stage_cli.phi, "uniform or fixed:<degrees>");
  stage->add_flag("--measure-a-first,!--measure-b-first", stage_cli.measure_a_first,
                  "which photon meets its polarizer first");
  stage->add_option("--threads", stage_cli.threads, "worker threads (results identical for any value)")
      ->check(CLI::PositiveNumber);
  stage->add_option("--config", stage_cli.config_path, "JSON config file; explicit flags override");
  stage->add_option("--out", stage_cli.out_path, "write the result as JSON");

  SweepCli sweep_cli;
  CLI::App* sweep = app.add_subcommand("sweep", "mismatch curve over a theta grid");
  sweep->add_option("--model", sweep_cli.model, "qm or lhv_threshold");
  sweep->add_option("--theta-start", sweep_cli.theta_start, "grid start in degrees");
  sweep->add_option("--theta-end", sweep_cli.theta_end, "grid end in degrees (inclusive)");
  sweep->add_option("--theta-step", sweep_cli.theta_step, "grid step in degrees");
  sweep->add_flag("--gap-mode", sweep_cli.gap_mode,
                  "also estimate at 2*theta and report the Bell gap");
  sweep->add_option("--trials", sweep_cli.trials, "photon pairs per grid point");
  sweep->add_option("--seed", sweep_cli.seed, "master seed");
  sweep->add_option("--phi", sweep_cli.phi, "uniform or fixed:<degrees>");
  sweep->add_flag("--measure-a-first,!--measure-b-first", sweep_cli.measure_a_first,
                  "which photon meets its polarizer first");
  sweep->add_option("--threads", sweep_cli.threads, "worker threads (results identical for any value)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_cli.out_path, "write the table as CSV");

  SeriesCli series_cli;
  CLI::App* series = app.add_subcommand("series-demo", "flip-set mismatch distribution");
  series->add_option("--n", series_cli.n, "series length");
  series->add_option("--k", series_cli.k, "flips per side");
  series->add_option("--mode", series_cli.mode, "sampled or exhaustive");
  series->add_option("--samples", series_cli.samples, "pairs to draw in sampled mode");
  series->add_option("--seed", series_cli.seed, "master seed");
  series->add_option("--out", series_cli.out_path, "write the distribution as JSON");

  RelativityCli rel_cli;
  double u_over_c_value = 0.0;
  CLI::App* rel = app.add_subcommand("relativity", "boosted-frame analysis of two events");
  rel->add_option("--scenario", rel_cli.scenario,
                  "paper (built-in two-detector example) or custom");
  rel->add_option("--x1", rel_cli.x1, "event 1 position in meters");
  rel->add_option("--t1-ns", rel_cli.t1_ns, "event 1 time in nanoseconds");
  rel->add_option("--x2", rel_cli.x2, "event 2 position in meters");
  rel->add_option("--t2-ns", rel_cli.t2_ns, "event 2 time in nanoseconds");
  rel->add_option("--beta", rel_cli.beta, "boosted-frame velocity / c, |beta| < 1");
  CLI::Option* u_opt = rel->add_option("--u-over-c", u_over_c_value,
                                       "signal-link speed / c (inf for instantaneous)");
  rel->add_flag("--entangled,!--independent", rel_cli.entangled,
                "treat the detections as one entangled pair");
  rel->add_flag("--c-exact,!--c-si", rel_cli.c_exact,
                "c = 3e8 m/s exactly (default); --c-si uses 299792458 m/s");
  rel->add_option("--out", rel_cli.out_path, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (u_opt->count() > 0) {
      rel_cli.u_over_c = u_over_c_value;
    }
    if (stage->parsed()) return run_stage_command(stage_cli, stage);
    if (sweep->parsed()) return run_sweep_command(sweep_cli);
    if (series->parsed()) return run_series_command(series_cli);
    if (rel->parsed()) return run_relativity_command(rel_cli, rel);
  } catch (const bellsim::invariant_violation& e) {
    std::cerr << "internal invariant failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
