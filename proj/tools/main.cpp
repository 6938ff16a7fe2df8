// sac: focal-length self-calibration from pan/tilt image pairs, plus the
// deterministic simulation harness behind it.
//
// Exit codes: 0 success, 2 input parse failure, 3 validation failure,
// 4 degenerate rotation, 1 anything else. Flag-usage mistakes are reported
// by CLI11 with its own nonzero codes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sac/experiments.hpp"
#include "sac/io.hpp"
#include "sac/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitDegenerate = 4;

struct CommonOptions {
  std::optional<std::string> out_dir;
  std::string format = "both";
  std::optional<std::uint64_t> seed_flag;
};

sac::OutputFormat parse_format(const std::string& format) {
  if (format == "csv") return sac::OutputFormat::Csv;
  if (format == "json") return sac::OutputFormat::Json;
  return sac::OutputFormat::Both;
}

// Seed precedence: --seed flag, then the config file's master_seed, then the
// SAC_SEED environment variable, then the built-in default.
void resolve_seed(sac::CampaignConfig& cfg, const std::optional<std::uint64_t>& flag) {
  if (flag) {
    cfg.experiment.master_seed = *flag;
    return;
  }
  if (cfg.master_seed_from_config) return;
  if (const char* env = std::getenv("SAC_SEED")) {
    try {
      cfg.experiment.master_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw sac::ValidationError({"SAC_SEED is not an unsigned integer: " +
                                  std::string(env)});
    }
  }
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::filesystem::create_directories(path);
  return path;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_axis_line(const sac::AxisStatistics& stats) {
  std::cout << "  " << sac::to_string(stats.axis) << "  rotation "
            << sac::format_double(stats.rotation_deg) << " deg  mean "
            << sac::format_double_2dp(stats.mean) << "  sd "
            << sac::format_double_2dp(stats.sd) << "  error "
            << sac::format_double_2dp(stats.error) << "\n";
}

void print_written(const std::filesystem::path& dir,
                   const std::vector<std::string>& outputs) {
  std::cout << "wrote:";
  for (const auto& name : outputs) {
    std::cout << " " << (dir / name).string();
  }
  std::cout << "\n";
}

// --------------------------------------------------------------------------
// calibrate
// --------------------------------------------------------------------------

struct CalibrateOptions {
  std::optional<std::string> pan_file;
  std::optional<std::string> tilt_file;
  std::optional<std::string> ground_truth;  // "fv,fu"
  std::string selection = "center";
  std::string aggregation = "mean";
  CommonOptions common;
};

sac::CalibrationAxisResult calibrate_one(const std::string& path,
                                         sac::RotationAxis expected_axis,
                                         sac::Selection selection,
                                         sac::Aggregation aggregation,
                                         std::optional<double> ground_truth) {
  const sac::CorrespondenceFileData data = sac::read_correspondence_file(path);
  if (data.rotation.axis() != expected_axis) {
    throw sac::ValidationError({path + ": expected axis=" +
                                sac::to_string(expected_axis) + ", file declares axis=" +
                                sac::to_string(data.rotation.axis())});
  }
  const sac::ImagePoint center{data.size.width / 2.0, data.size.height / 2.0};
  sac::CalibrationAxisResult result;
  result.estimate = sac::estimate_correspondences(data.rows, data.rotation, center,
                                                  selection, aggregation);
  result.rotation_deg = data.rotation.degrees();
  result.n_correspondences = static_cast<int>(data.rows.size());
  if (ground_truth) {
    result.ground_truth = *ground_truth;
    result.delta_pct = sac::percent_error(result.estimate.magnitude, *ground_truth);
  }
  return result;
}

void print_calibration_axis(const sac::CalibrationAxisResult& axis, const char* name) {
  std::cout << "  " << name << "  rotation " << sac::format_double(axis.rotation_deg)
            << " deg  value " << sac::format_double(axis.estimate.value)
            << "  magnitude " << sac::format_double(axis.estimate.magnitude)
            << "  (" << axis.estimate.n_points << " of " << axis.n_correspondences
            << " correspondences)\n";
  if (axis.delta_pct) {
    std::cout << "      vs ground truth " << sac::format_double(*axis.ground_truth)
              << ": delta " << sac::format_double(*axis.delta_pct) << " %\n";
  }
}

int run_calibrate(const CalibrateOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (!opts.pan_file && !opts.tilt_file) {
    throw sac::ValidationError({"calibrate needs --pan-file and/or --tilt-file"});
  }

  std::optional<double> gt_fv, gt_fu;
  if (opts.ground_truth) {
    double fv = 0.0, fu = 0.0;
    if (std::sscanf(opts.ground_truth->c_str(), "%lf,%lf", &fv, &fu) != 2) {
      throw sac::ValidationError({"--ground-truth expects 'fv,fu', got '" +
                                  *opts.ground_truth + "'"});
    }
    gt_fv = fv;
    gt_fu = fu;
  }

  const sac::Selection selection = opts.selection == "all"
                                       ? sac::Selection::All
                                       : sac::Selection::CenterOnly;
  const sac::Aggregation aggregation = opts.aggregation == "median"
                                           ? sac::Aggregation::Median
                                           : sac::Aggregation::Mean;

  sac::CalibrationSummary summary;
  summary.selection = selection;
  summary.aggregation = aggregation;
  if (opts.pan_file) {
    summary.fv = calibrate_one(*opts.pan_file, sac::RotationAxis::Pan, selection,
                               aggregation, gt_fv);
  }
  if (opts.tilt_file) {
    summary.fu = calibrate_one(*opts.tilt_file, sac::RotationAxis::Tilt, selection,
                               aggregation, gt_fu);
  }

  std::cout << "calibration (selection=" << sac::to_string(selection)
            << ", aggregation=" << sac::to_string(aggregation) << ")\n";
  if (summary.fv) print_calibration_axis(*summary.fv, "f_v");
  if (summary.fu) print_calibration_axis(*summary.fu, "f_u");

  if (opts.common.out_dir) {
    const auto dir = prepare_out_dir(*opts.common.out_dir);
    const auto outputs =
        sac::write_calibrate_outputs(dir, summary, parse_format(opts.common.format));
    sac::write_calibration_manifest(dir, opts.pan_file, opts.tilt_file, summary,
                                    outputs, seconds_since(start));
    print_written(dir, outputs);
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct SimulateOptions {
  std::string config_file;
  CommonOptions common;
};

int run_simulate(const SimulateOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  sac::CampaignConfig cfg = sac::read_config_file(opts.config_file);
  resolve_seed(cfg, opts.common.seed_flag);

  const sac::ExperimentReport report = sac::monte_carlo(cfg.experiment);

  std::cout << "simulate: " << cfg.experiment.n_runs << " runs x "
            << cfg.experiment.n_points << " points, f_true "
            << sac::format_double(cfg.experiment.f_true) << ", seed "
            << cfg.experiment.master_seed << "\n";
  print_axis_line(report.fv);
  print_axis_line(report.fu);

  const auto dir = prepare_out_dir(opts.common.out_dir.value_or("."));
  const auto outputs =
      sac::write_simulate_outputs(dir, report, parse_format(opts.common.format));
  sac::write_simulation_manifest(dir, "simulate", cfg, outputs, seconds_since(start));
  print_written(dir, outputs);
  return kExitOk;
}

// --------------------------------------------------------------------------
// sweep
// --------------------------------------------------------------------------

struct SweepOptions {
  std::string config_file;
  std::string kind;
  CommonOptions common;
};

int run_sweep(const SweepOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  sac::CampaignConfig cfg = sac::read_config_file(opts.config_file);
  resolve_seed(cfg, opts.common.seed_flag);
  const auto dir = prepare_out_dir(opts.common.out_dir.value_or("."));
  const sac::OutputFormat format = parse_format(opts.common.format);

  std::vector<std::string> outputs;
  if (opts.kind == "angle") {
    const auto cells = sac::angle_sweep(cfg.experiment, cfg.angles);
    std::cout << "angle sweep: " << cells.size() << " cells\n";
    for (const auto& cell : cells) {
      std::cout << "  angle " << sac::format_double(cell.angle_deg);
      if (cell.degenerate) {
        std::cout << "  degenerate (skipped)\n";
      } else {
        std::cout << "  error fv " << sac::format_double_2dp(cell.fv->error)
                  << "  fu " << sac::format_double_2dp(cell.fu->error) << "\n";
      }
    }
    outputs = sac::write_angle_sweep_outputs(dir, cfg.experiment, cells, format);
  } else if (opts.kind == "angular-noise") {
    const auto result =
        sac::angular_noise_sweep(cfg.experiment, {cfg.offsets_deg}, cfg.base_angles);
    std::cout << "angular-noise sweep: " << result.cells.size()
              << " cells; fitted |error|-vs-|offset| slopes:\n";
    for (const auto& slope : result.slopes) {
      std::cout << "  base " << sac::format_double(slope.base_deg) << " deg: fv "
                << sac::format_double_2dp(slope.slope_fv) << "  fu "
                << sac::format_double_2dp(slope.slope_fu) << " px/deg\n";
    }
    outputs = sac::write_angular_noise_outputs(dir, cfg.experiment, result, format);
  } else {  // pixel-noise
    const auto cells =
        sac::pixel_noise_sweep(cfg.experiment, cfg.sigmas, cfg.base_angles);
    std::cout << "pixel-noise sweep: " << cells.size() << " cells\n";
    outputs = sac::write_pixel_noise_outputs(dir, cfg.experiment, cells, format);
  }

  sac::write_simulation_manifest(dir, "sweep-" + opts.kind, cfg, outputs,
                                 seconds_since(start));
  print_written(dir, outputs);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form focal-length calibration from pan/tilt image pairs"};
  app.set_version_flag("--version", sac::kLibraryVersion);
  app.require_subcommand(1);

  CalibrateOptions cal;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "estimate focal lengths from correspondence files");
  calibrate->add_option("--pan-file", cal.pan_file,
                        "correspondence CSV for the pan pair");
  calibrate->add_option("--tilt-file", cal.tilt_file,
                        "correspondence CSV for the tilt pair");
  calibrate->add_option("--ground-truth", cal.ground_truth,
                        "reference focal lengths 'fv,fu' for percentage errors");
  calibrate->add_option("--selection", cal.selection, "correspondence choice")
      ->check(CLI::IsMember({"center", "all"}))
      ->capture_default_str();
  calibrate->add_option("--aggregation", cal.aggregation, "multi-point combine rule")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
  calibrate->add_option("--out", cal.common.out_dir, "directory for result files");
  calibrate->add_option("--format", cal.common.format, "result file formats")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the Monte Carlo study described by a config file");
  simulate->add_option("config", sim.config_file, "key=value config file")->required();
  simulate->add_option("--seed", sim.common.seed_flag, "override the master seed");
  simulate->add_option("--out", sim.common.out_dir, "output directory (default .)");
  simulate->add_option("--format", sim.common.format, "result file formats")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "sweep rotation angles or noise levels per the config file");
  sweep_cmd->add_option("config", sweep.config_file, "key=value config file")
      ->required();
  sweep_cmd->add_option("--kind", sweep.kind, "sweep family")
      ->check(CLI::IsMember({"angle", "angular-noise", "pixel-noise"}))
      ->required();
  sweep_cmd->add_option("--seed", sweep.common.seed_flag, "override the master seed");
  sweep_cmd->add_option("--out", sweep.common.out_dir, "output directory (default .)");
  sweep_cmd->add_option("--format", sweep.common.format, "result file formats")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (calibrate->parsed()) return run_calibrate(cal);
    if (simulate->parsed()) return run_simulate(sim);
    return run_sweep(sweep);
  } catch (const sac::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sac::ValidationError& e) {
    std::cerr << "invalid configuration:\n" << e.what() << "\n";
    return kExitValidation;
  } catch (const sac::DegenerateRotationError& e) {
    std::cerr << "degenerate rotation: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
