#include "sac/scene.hpp"

#include <cmath>
#include <string>

#include "sac/rng.hpp"

namespace sac {

ScenePointCloud generate_points(int n, double z_min, double z_max,
                                double fov_fill, const CameraIntrinsics& K,
                                ImageSize size, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("point count must be >= 1, got " + std::to_string(n));
  }
  if (!(z_min > 0.0) || !(z_min < z_max)) {
    throw std::invalid_argument("depth range must satisfy 0 < z_min < z_max");
  }
  if (!(fov_fill > 0.0) || fov_fill > 1.0) {
    throw std::invalid_argument("fov_fill must lie in (0, 1], got " +
                                std::to_string(fov_fill));
  }

  const double half_v = 0.5 * fov_fill * size.width;
  const double half_u = 0.5 * fov_fill * size.height;
  const double c_v = K.c_v();
  const double c_u = K.c_u();

  SplitMix64 rng(seed);
  ScenePointCloud cloud;
  cloud.seed = seed;
  cloud.points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double z = rng.uniform(z_min, z_max);
    const double v = rng.uniform(c_v - half_v, c_v + half_v);
    const double u = rng.uniform(c_u - half_u, c_u + half_u);
    cloud.points.push_back({(v - c_v) * z / K.f_v(), (u - c_u) * z / K.f_u(), z});
  }
  return cloud;
}

ScenePointCloud generate_grid_surface(int rows, int cols, double z_near,
                                      double z_far, double fov_fill,
                                      const CameraIntrinsics& K, ImageSize size) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("grid must have at least one row and column");
  }
  if (!(z_near > 0.0) || !(z_near <= z_far)) {
    throw std::invalid_argument("depth ramp must satisfy 0 < z_near <= z_far");
  }
  if (!(fov_fill > 0.0) || fov_fill > 1.0) {
    throw std::invalid_argument("fov_fill must lie in (0, 1], got " +
                                std::to_string(fov_fill));
  }

  const double half_v = 0.5 * fov_fill * size.width;
  const double half_u = 0.5 * fov_fill * size.height;

  ScenePointCloud cloud;
  cloud.seed = 0;
  cloud.points.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      // Cell centers of the fov box; depth ramps diagonally across the sheet.
      const double fv = (c + 0.5) / cols;
      const double fu = (r + 0.5) / rows;
      const double v = K.c_v() - half_v + 2.0 * half_v * fv;
      const double u = K.c_u() - half_u + 2.0 * half_u * fu;
      const double z = z_near + (z_far - z_near) * 0.5 * (fv + fu);
      cloud.points.push_back({(v - K.c_v()) * z / K.f_v(),
                              (u - K.c_u()) * z / K.f_u(), z});
    }
  }
  return cloud;
}

namespace {

bool inside(const ImagePoint& p, ImageSize size) {
  return p.v >= 0.0 && p.v < size.width && p.u >= 0.0 && p.u < size.height;
}

}  // namespace

ViewPair synthesize_pair(const ScenePointCloud& cloud, const CameraIntrinsics& K,
                         RotationAngle rot, ImageSize size) {
  const Eigen::Matrix3d Rt = rotation_matrix(rot).matrix().transpose();

  ViewPair pair{{}, {}, rot, {}, {}};
  const std::size_t n = cloud.points.size();
  pair.reference_view.reserve(n);
  pair.rotated_view.reserve(n);
  pair.visible_mask.reserve(n);

  for (const WorldPoint& p : cloud.points) {
    const ImagePoint ref = project(p, K);
    pair.reference_view.push_back(ref);

    const Eigen::Vector3d q = Rt * Eigen::Vector3d(p.x, p.y, p.z);
    std::optional<ImagePoint> rotated;
    if (q(2) > 0.0) {
      rotated = project({q(0), q(1), q(2)}, K);
    }
    pair.rotated_view.push_back(rotated);

    const bool visible = rotated.has_value() && inside(ref, size) && inside(*rotated, size);
    pair.visible_mask.push_back(visible);
    if (visible) {
      pair.correspondences.push_back({ref, *rotated});
    }
  }
  return pair;
}

}  // namespace sac
