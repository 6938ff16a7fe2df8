#ifndef SAC_ESTIMATOR_HPP
#define SAC_ESTIMATOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sac/geometry.hpp"

namespace sac {

/// Image axis a focal length refers to.
enum class FocalAxis { V, U };

const char* to_string(FocalAxis axis);

/// A point (v, u) in the reference image paired with its location
/// (v', u') after the camera rotation.
struct Correspondence {
  ImagePoint reference;
  ImagePoint transformed;
};

/// A focal-length estimate. The closed-form tilt estimator produces
/// negative values under the fixed rotation convention, so the raw signed
/// value is preserved and the magnitude reported alongside; error metrics
/// compare magnitudes against (positive) ground truth.
struct FocalEstimate {
  double value = 0.0;
  double magnitude = 0.0;
  FocalAxis axis = FocalAxis::V;
  int n_points = 0;

  static FocalEstimate from_value(double value, FocalAxis axis, int n_points);
};

/// The ratio (u0 - u)/(u0 - u') for pan (v-mirrored for tilt): how well the
/// preserved-coordinate assumption behind the estimators holds. Exactly 1
/// for an untouched coordinate; cos(angle) for a principal-axis point.
struct RateOfChangeDiagnostic {
  double ratio = 0.0;
};

/// Below this bound on the normalizing rotation entry (|r31| for pan,
/// |r32| for tilt) the estimators are numerically meaningless with
/// pixel-quantized inputs; they refuse to produce a value. Equal to
/// sin(0.01 degrees).
inline constexpr double kDegenerateRotationEpsilon = 1.7453292431333680e-04;

/// Closed-form focal length along v from one pan correspondence:
///   f_v = (v' - r11*v - (1 - r11)*c_v) / r31
/// with r_ij taken from rotation_matrix(pan).
/// Throws DegenerateRotationError when |r31| < kDegenerateRotationEpsilon,
/// std::invalid_argument when the angle is not a pan.
FocalEstimate estimate_fv(const Correspondence& c, RotationAngle pan, double c_v);

/// Closed-form focal length along u from one tilt correspondence:
///   f_u = (r22*u - u' + (1 - r22)*c_u) / r32
/// with r_ij taken from rotation_matrix(tilt). Signed value may be negative;
/// see FocalEstimate.
/// Throws DegenerateRotationError when |r32| < kDegenerateRotationEpsilon,
/// std::invalid_argument when the angle is not a tilt.
FocalEstimate estimate_fu(const Correspondence& c, RotationAngle tilt, double c_u);

enum class Aggregation { Mean, Median };

const char* to_string(Aggregation aggregation);

/// Combines per-point estimates of one axis into a single estimate
/// (sign-aware mean by default, median as the outlier-robust option).
/// Throws std::invalid_argument on an empty list or mixed axes.
FocalEstimate aggregate(std::span<const FocalEstimate> estimates,
                        Aggregation strategy = Aggregation::Mean);

/// Index of the correspondence whose reference point is nearest (Euclidean)
/// to the image center; ties break to the lowest index.
/// Throws std::invalid_argument on an empty list.
std::size_t select_center_index(std::span<const Correspondence> cs,
                                const ImagePoint& center);

/// The correspondence selected by select_center_index.
Correspondence select_center_correspondence(std::span<const Correspondence> cs,
                                            const ImagePoint& center);

/// Rate-of-change diagnostic for the coordinate a pure rotation should
/// preserve: the u coordinate under pan, the v coordinate under tilt.
/// Throws std::domain_error when the transformed point sits exactly on the
/// principal axis line (zero denominator).
RateOfChangeDiagnostic rate_of_change(const Correspondence& c, RotationAxis axis,
                                      const ImagePoint& principal_point);

}  // namespace sac

#endif  // SAC_ESTIMATOR_HPP
