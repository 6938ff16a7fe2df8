#ifndef SAC_NOISE_HPP
#define SAC_NOISE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sac/estimator.hpp"
#include "sac/geometry.hpp"

namespace sac {

/// Signed angular errors (degrees) injected into the angle reported to the
/// estimators. May include 0 as the noise-free anchor.
struct AngularNoiseSpec {
  std::vector<double> offsets_deg;
};

/// Zero-mean Gaussian pixel noise: sigma_pixel is the standard deviation in
/// pixels applied independently to each coordinate of each point.
struct PixelNoiseSpec {
  double sigma_pixel = 0.0;
  std::uint64_t seed = 0;
};

/// The angle the estimator is told, offset from the true one. The point
/// correspondences are deliberately NOT recomputed: the protocol holds the
/// matches fixed and lies only about the angle.
/// Throws std::invalid_argument when the result leaves (-90, 90) degrees.
RotationAngle perturb_angle(RotationAngle true_angle, double offset_deg);

/// Adds independent Gaussian offsets (sd = sigma_pixel) to both coordinates
/// of every point, deterministically in spec.seed. sigma_pixel = 0 returns
/// the input unchanged.
std::vector<ImagePoint> perturb_points(std::span<const ImagePoint> pts,
                                       const PixelNoiseSpec& spec);

/// Pixel noise on matched pairs: the reference view and the rotated view are
/// perturbed independently, each from its own stream.
std::vector<Correspondence> perturb_correspondences(
    std::span<const Correspondence> cs, double sigma_pixel,
    std::uint64_t reference_seed, std::uint64_t rotated_seed);

}  // namespace sac

#endif  // SAC_NOISE_HPP
