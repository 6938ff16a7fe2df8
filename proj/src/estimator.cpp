#include "sac/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sac {

const char* to_string(FocalAxis axis) {
  return axis == FocalAxis::V ? "fv" : "fu";
}

const char* to_string(Aggregation aggregation) {
  return aggregation == Aggregation::Mean ? "mean" : "median";
}

FocalEstimate FocalEstimate::from_value(double value, FocalAxis axis, int n_points) {
  return {value, std::abs(value), axis, n_points};
}

namespace {

void require_axis(RotationAngle angle, RotationAxis expected, const char* op) {
  if (angle.axis() != expected) {
    throw std::invalid_argument(std::string(op) + " requires a " +
                                to_string(expected) + " angle, got " +
                                to_string(angle.axis()));
  }
}

[[noreturn]] void throw_degenerate(RotationAngle angle, const char* entry) {
  throw DegenerateRotationError(
      angle.degrees(),
      std::string("degenerate ") + to_string(angle.axis()) + " rotation " +
          std::to_string(angle.degrees()) + " deg: |" + entry +
          "| below threshold " + std::to_string(kDegenerateRotationEpsilon));
}

}  // namespace

FocalEstimate estimate_fv(const Correspondence& c, RotationAngle pan, double c_v) {
  require_axis(pan, RotationAxis::Pan, "estimate_fv");
  const RotationMatrix3 R = rotation_matrix(pan);
  const double r11 = R.r(1, 1);
  const double r31 = R.r(3, 1);
  if (std::abs(r31) < kDegenerateRotationEpsilon) {
    throw_degenerate(pan, "r31");
  }
  const double value =
      (c.transformed.v - r11 * c.reference.v - (1.0 - r11) * c_v) / r31;
  return FocalEstimate::from_value(value, FocalAxis::V, 1);
}

FocalEstimate estimate_fu(const Correspondence& c, RotationAngle tilt, double c_u) {
  require_axis(tilt, RotationAxis::Tilt, "estimate_fu");
  const RotationMatrix3 R = rotation_matrix(tilt);
  const double r22 = R.r(2, 2);
  const double r32 = R.r(3, 2);
  if (std::abs(r32) < kDegenerateRotationEpsilon) {
    throw_degenerate(tilt, "r32");
  }
  const double value =
      (r22 * c.reference.u - c.transformed.u + (1.0 - r22) * c_u) / r32;
  return FocalEstimate::from_value(value, FocalAxis::U, 1);
}

FocalEstimate aggregate(std::span<const FocalEstimate> estimates,
                        Aggregation strategy) {
  if (estimates.empty()) {
    throw std::invalid_argument("cannot aggregate an empty estimate list");
  }
  const FocalAxis axis = estimates.front().axis;
  for (const auto& e : estimates) {
    if (e.axis != axis) {
      throw std::invalid_argument("cannot aggregate estimates of mixed axes");
    }
  }

  double value = 0.0;
  if (strategy == Aggregation::Mean) {
    for (const auto& e : estimates) value += e.value;
    value /= static_cast<double>(estimates.size());
  } else {
    std::vector<double> values(estimates.size());
    std::transform(estimates.begin(), estimates.end(), values.begin(),
                   [](const FocalEstimate& e) { return e.value; });
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    value = values.size() % 2 == 1 ? values[mid]
                                   : 0.5 * (values[mid - 1] + values[mid]);
  }
  return FocalEstimate::from_value(value, axis,
                                   static_cast<int>(estimates.size()));
}

std::size_t select_center_index(std::span<const Correspondence> cs,
                                const ImagePoint& center) {
  if (cs.empty()) {
    throw std::invalid_argument("cannot select from an empty correspondence list");
  }
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const double dv = cs[i].reference.v - center.v;
    const double du = cs[i].reference.u - center.u;
    const double d2 = dv * dv + du * du;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

Correspondence select_center_correspondence(std::span<const Correspondence> cs,
                                            const ImagePoint& center) {
  return cs[select_center_index(cs, center)];
}

RateOfChangeDiagnostic rate_of_change(const Correspondence& c, RotationAxis axis,
                                      const ImagePoint& principal_point) {
  double fixed_center, before, after;
  if (axis == RotationAxis::Pan) {
    fixed_center = principal_point.u;
    before = c.reference.u;
    after = c.transformed.u;
  } else {
    fixed_center = principal_point.v;
    before = c.reference.v;
    after = c.transformed.v;
  }
  const double denominator = fixed_center - after;
  if (denominator == 0.0) {
    throw std::domain_error(
        "rate-of-change undefined: transformed point lies on the principal axis line");
  }
  return {(fixed_center - before) / denominator};
}

}  // namespace sac
