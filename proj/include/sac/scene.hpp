#ifndef SAC_SCENE_HPP
#define SAC_SCENE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sac/estimator.hpp"
#include "sac/geometry.hpp"

namespace sac {

/// A reproducible random 3D point cloud. Every point has z > 0; the same
/// (parameters, seed) always regenerate the identical list.
struct ScenePointCloud {
  std::vector<WorldPoint> points;
  std::uint64_t seed = 0;
};

/// Projections of one cloud before and after a camera rotation, index-aligned
/// with the cloud. A rotated entry is empty when the rotated point falls
/// behind the camera. visible_mask is true iff both projections exist and lie
/// inside the image bounds; correspondences hold exactly the masked-true
/// pairs, in cloud order.
struct ViewPair {
  std::vector<ImagePoint> reference_view;
  std::vector<std::optional<ImagePoint>> rotated_view;
  RotationAngle rotation;
  std::vector<Correspondence> correspondences;
  std::vector<bool> visible_mask;
};

/// Random cloud sampled inside the camera frustum: per point, depth
/// z ~ U[z_min, z_max], then a pixel drawn uniformly over the central
/// fov_fill fraction of the image and back-projected to that depth
/// (x = (v - c_v) z / f_v, y = (u - c_u) z / f_u). Draw order per point is
/// z, v, u on a SplitMix64 stream seeded with `seed`.
///
/// Preconditions: n >= 1, 0 < z_min < z_max, 0 < fov_fill <= 1.
ScenePointCloud generate_points(int n, double z_min, double z_max,
                                double fov_fill, const CameraIntrinsics& K,
                                ImageSize size, std::uint64_t seed);

/// Fixed structured cloud standing in for clustered man-made geometry: a
/// rows x cols grid of pixels over the central fov_fill box, back-projected
/// onto a slanted sheet whose depth ramps from z_near to z_far across the
/// grid. Fully deterministic, consumes no randomness (seed recorded as 0).
ScenePointCloud generate_grid_surface(int rows, int cols, double z_near,
                                      double z_far, double fov_fill,
                                      const CameraIntrinsics& K, ImageSize size);

/// Projects the cloud into the reference view and into the view after the
/// camera rotates by `rot` (world points transformed by R^T). Invisible
/// points are masked, never fatal.
ViewPair synthesize_pair(const ScenePointCloud& cloud, const CameraIntrinsics& K,
                         RotationAngle rot, ImageSize size);

}  // namespace sac

#endif  // SAC_SCENE_HPP
