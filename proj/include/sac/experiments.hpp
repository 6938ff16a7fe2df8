#ifndef SAC_EXPERIMENTS_HPP
#define SAC_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sac/estimator.hpp"
#include "sac/geometry.hpp"
#include "sac/noise.hpp"
#include "sac/scene.hpp"

namespace sac {

/// Which correspondences feed the estimators: every visible one, or only
/// the single match nearest the image center (less affected by the
/// approximation error that grows away from the principal point).
enum class Selection { All, CenterOnly };

const char* to_string(Selection selection);

/// Scene model behind each run: a fresh random frustum cloud per run, or
/// the fixed structured grid surface (clustered-geometry stand-in; the
/// same points every run, so only noise varies across runs).
enum class SceneKind { RandomFrustum, GridSurface };

const char* to_string(SceneKind scene);

/// Full parameterization of a simulation campaign. Defaults reproduce the
/// reference operating point: ground truth 772.55 px in an 800x600 image,
/// 1000 runs of 500 frustum-sampled points at depths 5-15, pan +1 / tilt -1
/// degrees, center-point selection.
struct ExperimentConfig {
  double f_true = 772.55;
  ImageSize image_size{800, 600};
  int n_points = 500;
  int n_runs = 1000;
  double pan_deg = 1.0;
  double tilt_deg = -1.0;
  std::uint64_t master_seed = 42;
  Aggregation aggregation = Aggregation::Mean;
  Selection selection = Selection::CenterOnly;
  SceneKind scene = SceneKind::RandomFrustum;
  double fov_fill = 0.8;
  double z_min = 5.0;
  double z_max = 15.0;

  /// Throws ValidationError listing every violated constraint.
  void validate() const;

  /// Centered intrinsics with f_v = f_u = f_true.
  CameraIntrinsics intrinsics() const;
};

/// Per-axis results of a Monte Carlo experiment. mean and sd are computed
/// over per-run estimate magnitudes (the signed values are preserved in
/// per_run); sd is the sample standard deviation (0 for a single run);
/// error = |mean - f_true|.
struct AxisStatistics {
  FocalAxis axis = FocalAxis::V;
  double rotation_deg = 0.0;
  std::vector<FocalEstimate> per_run;
  double mean = 0.0;
  double sd = 0.0;
  double error = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  AxisStatistics fv;
  AxisStatistics fu;
};

/// Selection followed by estimation: reduces the correspondence set per the
/// strategy, runs the closed-form estimator for the angle's axis on each
/// survivor, and aggregates. Only the principal point is needed, never the
/// focal length being estimated. Throws on an empty correspondence list.
FocalEstimate estimate_correspondences(std::span<const Correspondence> cs,
                                       RotationAngle angle,
                                       const ImagePoint& principal_point,
                                       Selection selection,
                                       Aggregation aggregation);

/// The core Monte Carlo: for each run r, a fresh cloud seeded with
/// master_seed XOR r, exact pan and tilt view pairs, per-run estimates for
/// both axes, and mean/sd/error statistics across runs. Deterministic in
/// master_seed.
ExperimentReport monte_carlo(const ExperimentConfig& cfg);

/// One Monte Carlo cell per rotation angle (applied to both axes).
/// Angles too small for the estimators are flagged, not fatal.
struct AngleSweepCell {
  double angle_deg = 0.0;
  bool degenerate = false;
  std::optional<AxisStatistics> fv;
  std::optional<AxisStatistics> fu;
};

std::vector<AngleSweepCell> angle_sweep(const ExperimentConfig& cfg,
                                        std::span<const double> angles_deg);

/// One cell per (base angle, angular offset): view pairs are generated at
/// the base angle, correspondences held fixed, and the estimators run with
/// the offset (contaminated) angle.
struct AngularNoiseCell {
  double base_deg = 0.0;
  double offset_deg = 0.0;
  bool degenerate = false;
  std::optional<AxisStatistics> fv;
  std::optional<AxisStatistics> fu;
};

/// Ordinary-least-squares slope of cell error against |offset|, per base
/// angle and axis. Smaller base angles fit steeper slopes.
struct AngularNoiseSlope {
  double base_deg = 0.0;
  double slope_fv = 0.0;
  double slope_fu = 0.0;
};

struct AngularNoiseResult {
  std::vector<AngularNoiseCell> cells;
  std::vector<AngularNoiseSlope> slopes;
};

AngularNoiseResult angular_noise_sweep(const ExperimentConfig& cfg,
                                       const AngularNoiseSpec& noise,
                                       std::span<const double> base_angles_deg);

/// One cell per (base angle, pixel sigma): exact pairs at the base angle,
/// both views perturbed independently with Gaussian pixel noise, estimators
/// run with the true angle. abs_error_* summarize |magnitude - f_true|
/// across runs; at fixed sigma > 0 the spread shrinks as the base angle
/// grows.
struct PixelNoiseCell {
  double base_deg = 0.0;
  double sigma = 0.0;
  AxisStatistics fv;
  AxisStatistics fu;
  double fv_abs_error_mean = 0.0;
  double fv_abs_error_sd = 0.0;
  double fu_abs_error_mean = 0.0;
  double fu_abs_error_sd = 0.0;
};

std::vector<PixelNoiseCell> pixel_noise_sweep(const ExperimentConfig& cfg,
                                              std::span<const double> sigmas,
                                              std::span<const double> base_angles_deg);

/// 100 * |estimate_magnitude - ground_truth| / ground_truth.
/// Throws std::invalid_argument when ground_truth <= 0.
double percent_error(double estimate_magnitude, double ground_truth);

}  // namespace sac

#endif  // SAC_EXPERIMENTS_HPP
