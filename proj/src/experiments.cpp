#include "sac/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sac/rng.hpp"

namespace sac {

const char* to_string(Selection selection) {
  return selection == Selection::CenterOnly ? "center" : "all";
}

const char* to_string(SceneKind scene) {
  return scene == SceneKind::RandomFrustum ? "frustum" : "grid";
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  if (!(f_true > 0.0)) {
    problems.push_back("f_true must be > 0, got " + std::to_string(f_true));
  }
  if (image_size.width <= 0 || image_size.height <= 0) {
    problems.push_back("image size must be positive, got " +
                       std::to_string(image_size.width) + "x" +
                       std::to_string(image_size.height));
  }
  if (n_points < 1) {
    problems.push_back("n_points must be >= 1, got " + std::to_string(n_points));
  }
  if (n_runs < 1) {
    problems.push_back("n_runs must be >= 1, got " + std::to_string(n_runs));
  }
  if (!(std::abs(pan_deg) < 90.0)) {
    problems.push_back("pan_deg must satisfy |deg| < 90, got " + std::to_string(pan_deg));
  }
  if (!(std::abs(tilt_deg) < 90.0)) {
    problems.push_back("tilt_deg must satisfy |deg| < 90, got " + std::to_string(tilt_deg));
  }
  if (!(fov_fill > 0.0) || fov_fill > 1.0) {
    problems.push_back("fov_fill must lie in (0, 1], got " + std::to_string(fov_fill));
  }
  if (!(z_min > 0.0) || !(z_min < z_max)) {
    problems.push_back("depth range must satisfy 0 < z_min < z_max, got [" +
                       std::to_string(z_min) + ", " + std::to_string(z_max) + "]");
  }
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
}

CameraIntrinsics ExperimentConfig::intrinsics() const {
  return CameraIntrinsics::centered(f_true, f_true, image_size);
}

namespace {

FocalEstimate single_estimate(const Correspondence& c, RotationAngle angle,
                              const ImagePoint& principal_point) {
  return angle.axis() == RotationAxis::Pan
             ? estimate_fv(c, angle, principal_point.v)
             : estimate_fu(c, angle, principal_point.u);
}

// Selection is independent of the estimation angle, so sweeps reduce once
// and estimate many times.
std::vector<Correspondence> reduce_by_selection(std::span<const Correspondence> cs,
                                                Selection selection,
                                                const ImagePoint& center) {
  if (cs.empty()) {
    throw std::runtime_error("no visible correspondences to estimate from");
  }
  if (selection == Selection::CenterOnly) {
    return {select_center_correspondence(cs, center)};
  }
  return {cs.begin(), cs.end()};
}

FocalEstimate estimate_reduced(std::span<const Correspondence> cs,
                               RotationAngle angle,
                               const ImagePoint& principal_point,
                               Aggregation aggregation) {
  std::vector<FocalEstimate> estimates;
  estimates.reserve(cs.size());
  for (const Correspondence& c : cs) {
    estimates.push_back(single_estimate(c, angle, principal_point));
  }
  return aggregate(estimates, aggregation);
}

AxisStatistics make_axis_statistics(FocalAxis axis, double rotation_deg,
                                    std::vector<FocalEstimate> per_run,
                                    double f_true) {
  AxisStatistics stats;
  stats.axis = axis;
  stats.rotation_deg = rotation_deg;
  stats.per_run = std::move(per_run);

  const std::size_t n = stats.per_run.size();
  double sum = 0.0;
  for (const auto& e : stats.per_run) sum += e.magnitude;
  stats.mean = sum / static_cast<double>(n);

  if (n > 1) {
    double ss = 0.0;
    for (const auto& e : stats.per_run) {
      const double d = e.magnitude - stats.mean;
      ss += d * d;
    }
    stats.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  stats.error = std::abs(stats.mean - f_true);
  return stats;
}

// Moments of |magnitude - f_true| across runs (the error-spread measure the
// pixel-noise study compares between base angles).
std::pair<double, double> abs_error_moments(const AxisStatistics& stats,
                                            double f_true) {
  const std::size_t n = stats.per_run.size();
  double sum = 0.0;
  for (const auto& e : stats.per_run) sum += std::abs(e.magnitude - f_true);
  const double mean = sum / static_cast<double>(n);
  double sd = 0.0;
  if (n > 1) {
    double ss = 0.0;
    for (const auto& e : stats.per_run) {
      const double d = std::abs(e.magnitude - f_true) - mean;
      ss += d * d;
    }
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return {mean, sd};
}

bool is_degenerate_angle(double degrees) {
  return std::abs(std::sin(degrees * 3.14159265358979323846 / 180.0)) <
         kDegenerateRotationEpsilon;
}

std::uint64_t run_seed(std::uint64_t master_seed, int run_index) {
  return master_seed ^ static_cast<std::uint64_t>(run_index);
}

// The grid surface uses the largest near-square grid not exceeding n_points.
ScenePointCloud make_cloud(const ExperimentConfig& cfg, const CameraIntrinsics& K,
                           std::uint64_t seed) {
  if (cfg.scene == SceneKind::GridSurface) {
    const int rows = std::max(1, static_cast<int>(std::sqrt(cfg.n_points)));
    const int cols = std::max(1, cfg.n_points / rows);
    return generate_grid_surface(rows, cols, cfg.z_min, cfg.z_max, cfg.fov_fill, K,
                                 cfg.image_size);
  }
  return generate_points(cfg.n_points, cfg.z_min, cfg.z_max, cfg.fov_fill, K,
                         cfg.image_size, seed);
}

}  // namespace

FocalEstimate estimate_correspondences(std::span<const Correspondence> cs,
                                       RotationAngle angle,
                                       const ImagePoint& principal_point,
                                       Selection selection,
                                       Aggregation aggregation) {
  const std::vector<Correspondence> reduced =
      reduce_by_selection(cs, selection, principal_point);
  return estimate_reduced(reduced, angle, principal_point, aggregation);
}

ExperimentReport monte_carlo(const ExperimentConfig& cfg) {
  cfg.validate();
  const CameraIntrinsics K = cfg.intrinsics();
  const RotationAngle pan(cfg.pan_deg, RotationAxis::Pan);
  const RotationAngle tilt(cfg.tilt_deg, RotationAxis::Tilt);

  std::vector<FocalEstimate> fv_runs, fu_runs;
  fv_runs.reserve(cfg.n_runs);
  fu_runs.reserve(cfg.n_runs);

  for (int r = 0; r < cfg.n_runs; ++r) {
    const ScenePointCloud cloud = make_cloud(cfg, K, run_seed(cfg.master_seed, r));
    const ViewPair pan_pair = synthesize_pair(cloud, K, pan, cfg.image_size);
    fv_runs.push_back(estimate_correspondences(pan_pair.correspondences, pan,
                                               K.principal_point(), cfg.selection,
                                               cfg.aggregation));
    const ViewPair tilt_pair = synthesize_pair(cloud, K, tilt, cfg.image_size);
    fu_runs.push_back(estimate_correspondences(tilt_pair.correspondences, tilt,
                                               K.principal_point(), cfg.selection,
                                               cfg.aggregation));
  }

  return {cfg,
          make_axis_statistics(FocalAxis::V, cfg.pan_deg, std::move(fv_runs), cfg.f_true),
          make_axis_statistics(FocalAxis::U, cfg.tilt_deg, std::move(fu_runs), cfg.f_true)};
}

std::vector<AngleSweepCell> angle_sweep(const ExperimentConfig& cfg,
                                        std::span<const double> angles_deg) {
  cfg.validate();
  std::vector<std::string> problems;
  if (angles_deg.empty()) {
    problems.push_back("angle sweep grid must be nonempty");
  }
  for (double a : angles_deg) {
    if (!(std::abs(a) < 90.0)) {
      problems.push_back("sweep angle must satisfy |deg| < 90, got " + std::to_string(a));
    }
  }
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }

  std::vector<AngleSweepCell> cells;
  cells.reserve(angles_deg.size());
  for (double angle : angles_deg) {
    AngleSweepCell cell;
    cell.angle_deg = angle;
    if (is_degenerate_angle(angle)) {
      cell.degenerate = true;
    } else {
      ExperimentConfig cell_cfg = cfg;
      cell_cfg.pan_deg = angle;
      cell_cfg.tilt_deg = angle;
      ExperimentReport report = monte_carlo(cell_cfg);
      cell.fv = std::move(report.fv);
      cell.fu = std::move(report.fu);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

namespace {

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

AngularNoiseResult angular_noise_sweep(const ExperimentConfig& cfg,
                                       const AngularNoiseSpec& noise,
                                       std::span<const double> base_angles_deg) {
  cfg.validate();
  std::vector<std::string> problems;
  if (noise.offsets_deg.empty()) {
    problems.push_back("angular offset grid must be nonempty");
  }
  if (base_angles_deg.empty()) {
    problems.push_back("base angle grid must be nonempty");
  }
  for (double b : base_angles_deg) {
    if (!(std::abs(b) < 90.0)) {
      problems.push_back("base angle must satisfy |deg| < 90, got " + std::to_string(b));
    } else if (is_degenerate_angle(b)) {
      problems.push_back("base angle is degenerate (too close to zero): " +
                         std::to_string(b));
    }
  }
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }

  const CameraIntrinsics K = cfg.intrinsics();
  const std::size_t n_offsets = noise.offsets_deg.size();

  AngularNoiseResult result;
  for (double base : base_angles_deg) {
    const RotationAngle base_pan(base, RotationAxis::Pan);
    const RotationAngle base_tilt(base, RotationAxis::Tilt);

    // A perturbed angle can leave the valid domain or become degenerate;
    // such cells are flagged and carry no statistics.
    std::vector<bool> usable(n_offsets);
    for (std::size_t j = 0; j < n_offsets; ++j) {
      const double perturbed = base + noise.offsets_deg[j];
      usable[j] = std::abs(perturbed) < 90.0 && !is_degenerate_angle(perturbed);
    }

    std::vector<std::vector<FocalEstimate>> fv_cells(n_offsets), fu_cells(n_offsets);
    for (std::size_t j = 0; j < n_offsets; ++j) {
      if (usable[j]) {
        fv_cells[j].reserve(cfg.n_runs);
        fu_cells[j].reserve(cfg.n_runs);
      }
    }

    for (int r = 0; r < cfg.n_runs; ++r) {
      const ScenePointCloud cloud = make_cloud(cfg, K, run_seed(cfg.master_seed, r));
      const ViewPair pan_pair = synthesize_pair(cloud, K, base_pan, cfg.image_size);
      const ViewPair tilt_pair = synthesize_pair(cloud, K, base_tilt, cfg.image_size);
      const std::vector<Correspondence> pan_cs = reduce_by_selection(
          pan_pair.correspondences, cfg.selection, K.principal_point());
      const std::vector<Correspondence> tilt_cs = reduce_by_selection(
          tilt_pair.correspondences, cfg.selection, K.principal_point());

      for (std::size_t j = 0; j < n_offsets; ++j) {
        if (!usable[j]) continue;
        const RotationAngle lied_pan = perturb_angle(base_pan, noise.offsets_deg[j]);
        const RotationAngle lied_tilt = perturb_angle(base_tilt, noise.offsets_deg[j]);
        fv_cells[j].push_back(
            estimate_reduced(pan_cs, lied_pan, K.principal_point(), cfg.aggregation));
        fu_cells[j].push_back(
            estimate_reduced(tilt_cs, lied_tilt, K.principal_point(), cfg.aggregation));
      }
    }

    std::vector<double> xs, ys_fv, ys_fu;
    for (std::size_t j = 0; j < n_offsets; ++j) {
      AngularNoiseCell cell;
      cell.base_deg = base;
      cell.offset_deg = noise.offsets_deg[j];
      if (!usable[j]) {
        cell.degenerate = true;
      } else {
        cell.fv = make_axis_statistics(FocalAxis::V, base + noise.offsets_deg[j],
                                       std::move(fv_cells[j]), cfg.f_true);
        cell.fu = make_axis_statistics(FocalAxis::U, base + noise.offsets_deg[j],
                                       std::move(fu_cells[j]), cfg.f_true);
        xs.push_back(std::abs(noise.offsets_deg[j]));
        ys_fv.push_back(cell.fv->error);
        ys_fu.push_back(cell.fu->error);
      }
      result.cells.push_back(std::move(cell));
    }
    result.slopes.push_back({base, ols_slope(xs, ys_fv), ols_slope(xs, ys_fu)});
  }
  return result;
}

std::vector<PixelNoiseCell> pixel_noise_sweep(const ExperimentConfig& cfg,
                                              std::span<const double> sigmas,
                                              std::span<const double> base_angles_deg) {
  cfg.validate();
  std::vector<std::string> problems;
  if (sigmas.empty()) {
    problems.push_back("sigma grid must be nonempty");
  }
  if (base_angles_deg.empty()) {
    problems.push_back("base angle grid must be nonempty");
  }
  for (double s : sigmas) {
    if (!(s >= 0.0) || s > 3.0) {
      problems.push_back("sigma_pixel must lie in [0, 3], got " + std::to_string(s));
    }
  }
  for (double b : base_angles_deg) {
    if (!(std::abs(b) < 90.0)) {
      problems.push_back("base angle must satisfy |deg| < 90, got " + std::to_string(b));
    } else if (is_degenerate_angle(b)) {
      problems.push_back("base angle is degenerate (too close to zero): " +
                         std::to_string(b));
    }
  }
  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }

  const CameraIntrinsics K = cfg.intrinsics();
  const std::size_t n_sigmas = sigmas.size();

  std::vector<PixelNoiseCell> cells;
  for (std::size_t bi = 0; bi < base_angles_deg.size(); ++bi) {
    const double base = base_angles_deg[bi];
    const RotationAngle base_pan(base, RotationAxis::Pan);
    const RotationAngle base_tilt(base, RotationAxis::Tilt);

    std::vector<std::vector<FocalEstimate>> fv_cells(n_sigmas), fu_cells(n_sigmas);

    for (int r = 0; r < cfg.n_runs; ++r) {
      const std::uint64_t rs = run_seed(cfg.master_seed, r);
      const ScenePointCloud cloud = make_cloud(cfg, K, rs);
      const ViewPair pan_pair = synthesize_pair(cloud, K, base_pan, cfg.image_size);
      const ViewPair tilt_pair = synthesize_pair(cloud, K, base_tilt, cfg.image_size);

      for (std::size_t j = 0; j < n_sigmas; ++j) {
        const double sigma = sigmas[j];
        std::vector<Correspondence> pan_cs = pan_pair.correspondences;
        std::vector<Correspondence> tilt_cs = tilt_pair.correspondences;
        if (sigma > 0.0) {
          // Four images per run (pan/tilt x reference/rotated), each with its
          // own noise stream, disjoint across sweep cells.
          const std::uint64_t cell_noise =
              derive_stream(rs, bi * n_sigmas + j);
          pan_cs = perturb_correspondences(pan_cs, sigma,
                                           derive_stream(cell_noise, 0),
                                           derive_stream(cell_noise, 1));
          tilt_cs = perturb_correspondences(tilt_cs, sigma,
                                            derive_stream(cell_noise, 2),
                                            derive_stream(cell_noise, 3));
        }
        fv_cells[j].push_back(
            estimate_correspondences(pan_cs, base_pan, K.principal_point(),
                                     cfg.selection, cfg.aggregation));
        fu_cells[j].push_back(
            estimate_correspondences(tilt_cs, base_tilt, K.principal_point(),
                                     cfg.selection, cfg.aggregation));
      }
    }

    for (std::size_t j = 0; j < n_sigmas; ++j) {
      PixelNoiseCell cell;
      cell.base_deg = base;
      cell.sigma = sigmas[j];
      cell.fv = make_axis_statistics(FocalAxis::V, base, std::move(fv_cells[j]),
                                     cfg.f_true);
      cell.fu = make_axis_statistics(FocalAxis::U, base, std::move(fu_cells[j]),
                                     cfg.f_true);
      std::tie(cell.fv_abs_error_mean, cell.fv_abs_error_sd) =
          abs_error_moments(cell.fv, cfg.f_true);
      std::tie(cell.fu_abs_error_mean, cell.fu_abs_error_sd) =
          abs_error_moments(cell.fu, cfg.f_true);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

double percent_error(double estimate_magnitude, double ground_truth) {
  if (!(ground_truth > 0.0)) {
    throw std::invalid_argument("ground truth must be > 0, got " +
                                std::to_string(ground_truth));
  }
  return 100.0 * std::abs(estimate_magnitude - ground_truth) / ground_truth;
}

}  // namespace sac
