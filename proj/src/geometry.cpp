#include "sac/geometry.hpp"

#include <cmath>
#include <string>

namespace sac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOrthonormalityTol = 1e-12;
constexpr double kInfinityTol = 1e-12;

}  // namespace

const char* to_string(RotationAxis axis) {
  return axis == RotationAxis::Pan ? "pan" : "tilt";
}

ImageSize::ImageSize(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) {
    throw std::invalid_argument("image size must be strictly positive, got " +
                                std::to_string(w) + "x" + std::to_string(h));
  }
}

ImagePoint HomogeneousImagePoint::dehomogenize() const {
  if (std::abs(x3) < kInfinityTol) {
    throw PointAtInfinityError(
        "homogeneous point maps to infinity (|x3| = " + std::to_string(std::abs(x3)) + ")");
  }
  return {x1 / x3, x2 / x3};
}

CameraIntrinsics::CameraIntrinsics(double f_v, double f_u, double c_v, double c_u)
    : f_v_(f_v), f_u_(f_u), c_v_(c_v), c_u_(c_u) {
  if (!(f_v > 0.0) || !(f_u > 0.0)) {
    throw std::invalid_argument("focal lengths must be strictly positive, got f_v=" +
                                std::to_string(f_v) + ", f_u=" + std::to_string(f_u));
  }
  if (!std::isfinite(c_v) || !std::isfinite(c_u)) {
    throw std::invalid_argument("principal point must be finite");
  }
}

CameraIntrinsics CameraIntrinsics::centered(double f_v, double f_u, ImageSize size) {
  return CameraIntrinsics(f_v, f_u, size.width / 2.0, size.height / 2.0);
}

Eigen::Matrix3d CameraIntrinsics::matrix() const {
  Eigen::Matrix3d K;
  K << f_v_, 0, c_v_,
       0, f_u_, c_u_,
       0, 0, 1;
  return K;
}

Eigen::Matrix3d CameraIntrinsics::inverse_matrix() const {
  Eigen::Matrix3d Kinv;
  Kinv << 1.0 / f_v_, 0, -c_v_ / f_v_,
          0, 1.0 / f_u_, -c_u_ / f_u_,
          0, 0, 1;
  return Kinv;
}

RotationAngle::RotationAngle(double degrees, RotationAxis axis)
    : degrees_(degrees), axis_(axis) {
  if (!std::isfinite(degrees) || std::abs(degrees) >= 90.0) {
    throw std::invalid_argument("rotation angle must satisfy |deg| < 90, got " +
                                std::to_string(degrees));
  }
}

double RotationAngle::radians() const { return degrees_ * kPi / 180.0; }

RotationMatrix3::RotationMatrix3(const Eigen::Matrix3d& m) : m_(m) {
  const Eigen::Matrix3d gram = m * m.transpose();
  const Eigen::Matrix3d residual = gram - Eigen::Matrix3d::Identity();
  if (residual.cwiseAbs().maxCoeff() > kOrthonormalityTol) {
    throw std::invalid_argument("matrix is not orthonormal to 1e-12 per entry");
  }
  if (std::abs(m.determinant() - 1.0) > kOrthonormalityTol) {
    throw std::invalid_argument("matrix determinant is not +1 to 1e-12");
  }
}

double RotationMatrix3::r(int i, int j) const {
  if (i < 1 || i > 3 || j < 1 || j > 3) {
    throw std::out_of_range("rotation entry indices are 1-based in {1,2,3}");
  }
  return m_(i - 1, j - 1);
}

RotationMatrix3 rotation_matrix(RotationAngle angle) {
  const double c = std::cos(angle.radians());
  const double s = std::sin(angle.radians());
  Eigen::Matrix3d m;
  if (angle.axis() == RotationAxis::Pan) {
    m << c, 0, s,
         0, 1, 0,
        -s, 0, c;
  } else {
    m << 1, 0, 0,
         0, c, -s,
         0, s, c;
  }
  return RotationMatrix3(m);
}

ImagePoint project(const WorldPoint& point, const CameraIntrinsics& K) {
  if (!(point.z > 0.0)) {
    throw std::invalid_argument("cannot project a point with z <= 0 (z = " +
                                std::to_string(point.z) + ")");
  }
  return {K.f_v() * point.x / point.z + K.c_v(),
          K.f_u() * point.y / point.z + K.c_u()};
}

Eigen::Matrix3d inter_image_homography(const CameraIntrinsics& K,
                                       const RotationMatrix3& R) {
  return K.matrix() * R.matrix().transpose() * K.inverse_matrix();
}

ImagePoint map_point(const Eigen::Matrix3d& H, const ImagePoint& p) {
  const Eigen::Vector3d q = H * Eigen::Vector3d(p.v, p.u, 1.0);
  return HomogeneousImagePoint{q(0), q(1), q(2)}.dehomogenize();
}

}  // namespace sac
