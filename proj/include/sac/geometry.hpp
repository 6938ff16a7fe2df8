#ifndef SAC_GEOMETRY_HPP
#define SAC_GEOMETRY_HPP

#include <Eigen/Dense>

#include "sac/errors.hpp"

namespace sac {

/// Axis of a single-axis camera rotation. Pan turns the camera about the
/// vertical (Y) axis, tilt about the horizontal (X) axis.
enum class RotationAxis { Pan, Tilt };

const char* to_string(RotationAxis axis);

/// Image dimensions in whole pixels.
struct ImageSize {
  int width = 0;
  int height = 0;

  ImageSize() = default;
  ImageSize(int w, int h);
};

/// A pixel location. Coordinates are ordered (v, u): v is the horizontal
/// axis (column), u the vertical axis (row). Points may lie outside the
/// image bounds; visibility is a separate predicate.
struct ImagePoint {
  double v = 0.0;
  double u = 0.0;
};

/// A 3D scene point in camera-frame units. Projection requires z > 0.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Homogeneous pixel coordinates [x1 x2 x3]. Dehomogenization is defined
/// only when the scale component x3 is nonzero.
struct HomogeneousImagePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  /// Throws PointAtInfinityError when |x3| < 1e-12.
  ImagePoint dehomogenize() const;
};

/// Pinhole intrinsics with zero skew: focal lengths (pixels) along the v
/// and u axes and the principal point. Focal lengths are strictly positive;
/// signed estimator outputs are normalized before being stored here.
class CameraIntrinsics {
 public:
  CameraIntrinsics(double f_v, double f_u, double c_v, double c_u);

  /// Intrinsics with the principal point at the image center
  /// (c_v = width/2, c_u = height/2).
  static CameraIntrinsics centered(double f_v, double f_u, ImageSize size);

  double f_v() const { return f_v_; }
  double f_u() const { return f_u_; }
  double c_v() const { return c_v_; }
  double c_u() const { return c_u_; }

  ImagePoint principal_point() const { return {c_v_, c_u_}; }

  /// K = [[f_v, 0, c_v], [0, f_u, c_u], [0, 0, 1]], acting on [v u 1]^T
  /// image coordinates from [x y z]^T camera coordinates.
  Eigen::Matrix3d matrix() const;

  /// Closed-form K^{-1}.
  Eigen::Matrix3d inverse_matrix() const;

 private:
  double f_v_;
  double f_u_;
  double c_v_;
  double c_u_;
};

/// A signed rotation angle about a named axis, in degrees. Magnitudes must
/// stay below 90 degrees; beyond that the small-rotation regime and the
/// visibility assumptions behind the estimators are meaningless.
class RotationAngle {
 public:
  RotationAngle(double degrees, RotationAxis axis);

  double degrees() const { return degrees_; }
  double radians() const;
  RotationAxis axis() const { return axis_; }

 private:
  double degrees_;
  RotationAxis axis_;
};

/// A proper 3x3 rotation. Construction checks orthonormality and det = +1
/// to 1e-12 per entry. Entries are exposed with the 1-based r_ij indexing
/// conventional for rotation matrices.
class RotationMatrix3 {
 public:
  explicit RotationMatrix3(const Eigen::Matrix3d& m);

  /// Entry at row i, column j; i, j in {1, 2, 3}.
  double r(int i, int j) const;

  const Eigen::Matrix3d& matrix() const { return m_; }

 private:
  Eigen::Matrix3d m_;
};

/// Rotation matrix for a pan or tilt angle.
///
/// Sign convention (fixed once, validated by the closed-form consistency
/// tests): for angle t,
///   pan  R_y(t) = [[cos t, 0, sin t], [0, 1, 0], [-sin t, 0, cos t]]
///   tilt R_x(t) = [[1, 0, 0], [0, cos t, -sin t], [0, sin t, cos t]]
/// The r_ij entries quoted throughout the estimator module are read from
/// this matrix, not its transpose.
RotationMatrix3 rotation_matrix(RotationAngle angle);

/// Pinhole projection v = f_v*x/z + c_v, u = f_u*y/z + c_u.
/// Throws std::invalid_argument when z <= 0.
ImagePoint project(const WorldPoint& point, const CameraIntrinsics& K);

/// The image-to-image map induced by a pure camera rotation:
/// H = K * R^T * K^{-1}. det(H) = 1 up to roundoff.
Eigen::Matrix3d inter_image_homography(const CameraIntrinsics& K,
                                       const RotationMatrix3& R);

/// Applies a 3x3 homography to a pixel and dehomogenizes.
/// Throws PointAtInfinityError when the result's scale component vanishes.
ImagePoint map_point(const Eigen::Matrix3d& H, const ImagePoint& p);

}  // namespace sac

#endif  // SAC_GEOMETRY_HPP
