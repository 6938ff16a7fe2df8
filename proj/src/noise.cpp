#include "sac/noise.hpp"

#include <string>

#include "sac/rng.hpp"

namespace sac {

RotationAngle perturb_angle(RotationAngle true_angle, double offset_deg) {
  // RotationAngle construction enforces the (-90, 90) domain.
  return RotationAngle(true_angle.degrees() + offset_deg, true_angle.axis());
}

std::vector<ImagePoint> perturb_points(std::span<const ImagePoint> pts,
                                       const PixelNoiseSpec& spec) {
  if (spec.sigma_pixel < 0.0) {
    throw std::invalid_argument("sigma_pixel must be >= 0, got " +
                                std::to_string(spec.sigma_pixel));
  }
  std::vector<ImagePoint> out(pts.begin(), pts.end());
  if (spec.sigma_pixel == 0.0) {
    return out;
  }
  SplitMix64 rng(spec.seed);
  for (ImagePoint& p : out) {
    const auto [dv, du] = rng.normal_pair();
    p.v += spec.sigma_pixel * dv;
    p.u += spec.sigma_pixel * du;
  }
  return out;
}

std::vector<Correspondence> perturb_correspondences(
    std::span<const Correspondence> cs, double sigma_pixel,
    std::uint64_t reference_seed, std::uint64_t rotated_seed) {
  std::vector<ImagePoint> refs, rots;
  refs.reserve(cs.size());
  rots.reserve(cs.size());
  for (const Correspondence& c : cs) {
    refs.push_back(c.reference);
    rots.push_back(c.transformed);
  }
  refs = perturb_points(refs, {sigma_pixel, reference_seed});
  rots = perturb_points(rots, {sigma_pixel, rotated_seed});

  std::vector<Correspondence> out(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    out[i] = {refs[i], rots[i]};
  }
  return out;
}

}  // namespace sac
