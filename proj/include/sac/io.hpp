#ifndef SAC_IO_HPP
#define SAC_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sac/experiments.hpp"

namespace sac {

/// Shortest decimal string that parses back to exactly the same double.
/// Every real emitted to a file goes through this, so outputs round-trip.
std::string format_double(double x);

/// Fixed two-decimal rendering for the human-facing summary columns.
std::string format_double_2dp(double x);

// ---------------------------------------------------------------------------
// Correspondence files: plain CSV rows v,u,v_prime,u_prime preceded by a
// '#'-prefixed key=value header block (width, height, axis, degrees).
// '#' lines without '=' are comments.
// ---------------------------------------------------------------------------

struct CorrespondenceFileData {
  ImageSize size;
  RotationAngle rotation;
  std::vector<Correspondence> rows;
};

/// Throws ParseError (with the offending line number) on malformed input.
CorrespondenceFileData read_correspondence_file(const std::filesystem::path& path);

void write_correspondence_file(const std::filesystem::path& path,
                               const CorrespondenceFileData& data);

/// Export helper: a synthesized view pair in the on-disk correspondence shape.
CorrespondenceFileData correspondence_data_from_pair(const ViewPair& pair,
                                                     ImageSize size);

// ---------------------------------------------------------------------------
// Campaign configs: flat key=value text. Unknown keys, unparseable values
// and domain violations are collected and reported all at once.
// ---------------------------------------------------------------------------

struct CampaignConfig {
  ExperimentConfig experiment;
  std::vector<double> angles;       // angle-sweep grid
  std::vector<double> offsets_deg;  // angular-noise offsets
  std::vector<double> base_angles;  // noise-sweep base rotations
  std::vector<double> sigmas;       // pixel-noise grid
  bool master_seed_from_config = false;  // whether the file set master_seed

  static CampaignConfig defaults();
};

/// Throws ParseError for structurally broken lines, ValidationError (all
/// problems at once) for bad keys or values.
CampaignConfig read_config_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Result files. CSV always carries full-precision columns; summary CSVs add
// two-decimal mirrors of the headline statistics.
// ---------------------------------------------------------------------------

enum class OutputFormat { Csv, Json, Both };

struct CalibrationAxisResult {
  FocalEstimate estimate;
  double rotation_deg = 0.0;
  int n_correspondences = 0;
  std::optional<double> ground_truth;
  std::optional<double> delta_pct;
};

struct CalibrationSummary {
  std::optional<CalibrationAxisResult> fv;
  std::optional<CalibrationAxisResult> fu;
  Selection selection = Selection::CenterOnly;
  Aggregation aggregation = Aggregation::Mean;
};

/// Each writer returns the names of the files it created inside `dir`.
std::vector<std::string> write_simulate_outputs(const std::filesystem::path& dir,
                                                const ExperimentReport& report,
                                                OutputFormat format);

std::vector<std::string> write_angle_sweep_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    std::span<const AngleSweepCell> cells, OutputFormat format);

std::vector<std::string> write_angular_noise_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    const AngularNoiseResult& result, OutputFormat format);

std::vector<std::string> write_pixel_noise_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    std::span<const PixelNoiseCell> cells, OutputFormat format);

std::vector<std::string> write_calibrate_outputs(const std::filesystem::path& dir,
                                                 const CalibrationSummary& summary,
                                                 OutputFormat format);

/// Reproduction manifest for simulate/sweep: command, library version, the
/// fully resolved config (including the grid the kind uses), seed, the files
/// written, and wall-clock duration.
void write_simulation_manifest(const std::filesystem::path& dir,
                               const std::string& command,
                               const CampaignConfig& config,
                               const std::vector<std::string>& outputs,
                               double duration_seconds);

/// Reproduction manifest for calibrate: input files and flags.
void write_calibration_manifest(const std::filesystem::path& dir,
                                const std::optional<std::string>& pan_file,
                                const std::optional<std::string>& tilt_file,
                                const CalibrationSummary& summary,
                                const std::vector<std::string>& outputs,
                                double duration_seconds);

}  // namespace sac

#endif  // SAC_IO_HPP
