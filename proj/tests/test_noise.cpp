#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sac/noise.hpp"

using namespace sac;

TEST_SUITE("noise") {

TEST_CASE("zero offset leaves the angle untouched") {
  const RotationAngle a(1.25, RotationAxis::Pan);
  const RotationAngle b = perturb_angle(a, 0.0);
  CHECK(b.degrees() == 1.25);
  CHECK(b.axis() == RotationAxis::Pan);
}

TEST_CASE("offsets add in degrees") {
  const RotationAngle perturbed = perturb_angle(RotationAngle(1.0, RotationAxis::Tilt), 0.1);
  CHECK(perturbed.degrees() == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(perturbed.axis() == RotationAxis::Tilt);
}

TEST_CASE("perturbed angles past 90 degrees overflow") {
  CHECK_THROWS_AS(perturb_angle(RotationAngle(89.0, RotationAxis::Pan), 5.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(perturb_angle(RotationAngle(-89.0, RotationAxis::Pan), -1.5),
                  std::invalid_argument);
}

TEST_CASE("sigma zero is the exact identity") {
  const std::vector<ImagePoint> pts{{1.5, 2.5}, {100.0, 200.0}, {-3.0, 7.0}};
  const std::vector<ImagePoint> out = perturb_points(pts, {0.0, 99});
  REQUIRE(out.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(out[i].v == pts[i].v);
    CHECK(out[i].u == pts[i].u);
  }
}

TEST_CASE("identical seeds reproduce identical noise") {
  const std::vector<ImagePoint> pts(1000, ImagePoint{100.0, 100.0});
  const auto a = perturb_points(pts, {1.5, 7});
  const auto b = perturb_points(pts, {1.5, 7});
  const auto c = perturb_points(pts, {1.5, 8});
  bool differs_somewhere = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(a[i].v == b[i].v);
    CHECK(a[i].u == b[i].u);
    differs_somewhere = differs_somewhere || a[i].v != c[i].v;
  }
  CHECK(differs_somewhere);
}

TEST_CASE("negative sigma is rejected") {
  CHECK_THROWS_AS(perturb_points(std::vector<ImagePoint>{{0.0, 0.0}}, {-0.1, 1}),
                  std::invalid_argument);
}

TEST_CASE("empirical noise moments match the requested sigma") {
  const std::vector<ImagePoint> pts(100000, ImagePoint{0.0, 0.0});
  const auto noisy = perturb_points(pts, {1.0, 12345});
  std::vector<double> offsets;
  offsets.reserve(2 * pts.size());
  for (const ImagePoint& p : noisy) {
    offsets.push_back(p.v);
    offsets.push_back(p.u);
  }
  CHECK(std::abs(sac_tests::mean_of(offsets)) <= 0.02);
  const double sd = sac_tests::sample_sd_of(offsets);
  CHECK(sd >= 0.99);
  CHECK(sd <= 1.01);
}

TEST_CASE("correspondence perturbation uses independent streams per view") {
  const std::vector<Correspondence> cs{{{100.0, 100.0}, {100.0, 100.0}},
                                       {{200.0, 150.0}, {200.0, 150.0}}};
  const auto noisy = perturb_correspondences(cs, 1.0, 100, 200);
  REQUIRE(noisy.size() == 2);
  // Same input coordinates, different streams: the two sides move apart.
  CHECK(noisy[0].reference.v != noisy[0].transformed.v);

  const auto identity = perturb_correspondences(cs, 0.0, 100, 200);
  CHECK(identity[1].reference.v == 200.0);
  CHECK(identity[1].transformed.u == 150.0);

  const auto again = perturb_correspondences(cs, 1.0, 100, 200);
  CHECK(again[0].reference.v == noisy[0].reference.v);
  CHECK(again[1].transformed.u == noisy[1].transformed.u);
}

}  // TEST_SUITE("noise")
