#include <doctest.h>

#include <cmath>
#include <limits>

#include "mwave/constants.hpp"
#include "mwave/design.hpp"
#include "mwave/errors.hpp"

using namespace mwave;

TEST_SUITE_BEGIN("design");

TEST_CASE("rect patch, Rogers 5880 substrate at 2.45 GHz") {
  const PatchDesign d = design_rect_patch(2.45e9, 2.2, 1.6e-3);
  CHECK(std::fabs(d.width - 48.41e-3) < 0.05e-3);
  CHECK(d.eps_eff == doctest::Approx(2.108).epsilon(1e-3));
  CHECK(std::fabs(d.length - 40.48e-3) < 0.05e-3);
  CHECK(d.ground_l == doctest::Approx(6 * 1.6e-3 + d.length));
  CHECK(d.ground_w == doctest::Approx(6 * 1.6e-3 + d.width));
  CHECK(d.ground_l > d.length);
  CHECK(d.ground_w > d.width);
  CHECK(d.eps_eff >= 1.0);
  CHECK(d.eps_eff <= d.eps_r);
  CHECK(d.length == doctest::Approx(d.l_eff - 2 * d.delta_l));
}

TEST_CASE("patch width on FR4 and the eps_r = 1 collapse") {
  CHECK(std::fabs(design_rect_patch(2.45e9, 4.4, 1.6e-3).width - 37.26e-3) < 0.05e-3);
  const double f0 = 3.1e9;
  CHECK(design_rect_patch(f0, 1.0, 1e-3).width ==
        doctest::Approx(constants::c0 / (2 * f0)).epsilon(1e-12));
}

TEST_CASE("cavity resonance inverts the patch length steps") {
  const PatchDesign d = design_rect_patch(2.45e9, 2.2, 1.6e-3);
  const double f = cavity_resonance(d.length, d.delta_l, d.eps_eff);
  CHECK(std::fabs(f - d.f0) / d.f0 < 1e-9);

  CHECK(cavity_resonance(40e-3, 0.0, 2.108) == doctest::Approx(2.582e9).epsilon(1e-3));
  // FR4-like slotted geometry: the analytic cavity sits far from the ISM band.
  CHECK(cavity_resonance(50e-3, 0.0, 3.3) == doctest::Approx(1.651e9).epsilon(1e-3));
}

TEST_CASE("patch dimensions shrink as f0 grows") {
  double prev_w = 1e9, prev_l = 1e9;
  for (double f0 = 1e9; f0 < 6e9; f0 += 0.5e9) {
    const PatchDesign d = design_rect_patch(f0, 2.2, 1.6e-3);
    CHECK(d.width < prev_w);
    CHECK(d.length < prev_l);
    prev_w = d.width;
    prev_l = d.length;
  }
}

TEST_CASE("non-physical substrate thickness is rejected") {
  CHECK_THROWS_AS(design_rect_patch(2.45e9, 2.2, 0.08), NonPhysical);
  CHECK_THROWS_AS(design_rect_patch(-1.0, 2.2, 1.6e-3), InvariantViolation);
  CHECK_THROWS_AS(design_rect_patch(2.45e9, 0.5, 1.6e-3), InvariantViolation);
}

TEST_CASE("monopole length rule") {
  CHECK(std::fabs(monopole_length(2.8e9, 4.3) - 10.68e-3) < 0.05e-3);
  CHECK(monopole_length(2.0e9, 1.0) == doctest::Approx(31.0e-3).epsilon(1e-9));
  // Quadrupling eps_r halves the length.
  CHECK(monopole_length(2.8e9, 4.0) == doctest::Approx(monopole_length(2.8e9, 1.0) / 2));

  double prev = 1e9;
  for (double f = 0.5e9; f < 8e9; f += 0.25e9) {
    const double l = monopole_length(f, 4.3);
    CHECK(l < prev);
    CHECK(l > 0.0);
    prev = l;
  }
}

TEST_CASE("vswr from return loss") {
  CHECK(s11_db_to_vswr(-10.0) == doctest::Approx(1.925).epsilon(1e-3));
  // |Gamma| = 1/3 is the VSWR = 2 match boundary.
  CHECK(std::fabs(s11_db_to_vswr(20.0 * std::log10(1.0 / 3.0)) - 2.0) < 1e-9);
  CHECK(s11_db_to_vswr(-std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(std::isinf(s11_db_to_vswr(0.0)));  // total reflection
  CHECK_THROWS_AS(s11_db_to_vswr(0.5), InvariantViolation);
}

TEST_CASE("vswr is increasing in |Gamma| and >= 1") {
  double prev = 1.0;
  for (double s11 = -40.0; s11 < -0.5; s11 += 0.5) {
    const double v = s11_db_to_vswr(s11);
    CHECK(v >= 1.0);
    CHECK(v > prev);
    prev = v;
  }
}

namespace {

S11Curve parabola_curve() {
  // -20 dB dip at 2.45 GHz crossing -10 dB at exactly 2.36 and 2.54 GHz
  // (the ISM-band patch profile).
  S11Curve curve;
  for (int k = 0; k <= 30; ++k) {
    const double f = 2.30e9 + k * 1e7;
    const double u = (f - 2.45e9) / 9e7;
    curve.points.emplace_back(f, std::min(-0.5, -20.0 + 10.0 * u * u));
  }
  return curve;
}

}  // namespace

TEST_CASE("bandwidth extraction on a single-dip band shape") {
  const auto bands = bandwidth_at_threshold(parabola_curve(), -10.0);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].f_low == doctest::Approx(2.36e9).epsilon(1e-12));
  CHECK(bands[0].f_high == doctest::Approx(2.54e9).epsilon(1e-12));
}

TEST_CASE("bandwidth edge cases") {
  S11Curve above;
  above.points = {{1e9, -3.0}, {2e9, -5.0}, {3e9, -4.0}};
  CHECK(bandwidth_at_threshold(above, -10.0).empty());

  S11Curve below;
  below.points = {{1e9, -15.0}, {2e9, -30.0}, {3e9, -12.0}};
  const auto bands = bandwidth_at_threshold(below, -10.0);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].f_low == 1e9);
  CHECK(bands[0].f_high == 3e9);

  S11Curve invalid;
  invalid.points = {{1e9, -15.0}};
  CHECK_THROWS_AS(bandwidth_at_threshold(invalid, -10.0), InvariantViolation);
  invalid.points = {{1e9, -15.0}, {1e9, -16.0}};
  CHECK_THROWS_AS(bandwidth_at_threshold(invalid, -10.0), InvariantViolation);
  invalid.points = {{1e9, 0.5}, {2e9, -16.0}};
  CHECK_THROWS_AS(bandwidth_at_threshold(invalid, -10.0), InvariantViolation);
}

TEST_CASE("bands are ordered, disjoint, inside the span, monotone in threshold") {
  S11Curve curve;
  // Two dips separated by a shoulder.
  for (int k = 0; k <= 100; ++k) {
    const double f = 1e9 + k * 4e7;
    const double d1 = (f - 2.0e9) / 3e8;
    const double d2 = (f - 4.0e9) / 2e8;
    const double s = std::min(-25.0 + 18.0 * d1 * d1, -18.0 + 14.0 * d2 * d2);
    curve.points.emplace_back(f, std::min(s, -1.0));
  }
  double prev_width = 1e12;
  for (double th : {-5.0, -8.0, -11.0, -14.0}) {
    const auto bands = bandwidth_at_threshold(curve, th);
    double width = 0.0;
    for (size_t b = 0; b < bands.size(); ++b) {
      CHECK(bands[b].f_low <= bands[b].f_high);
      CHECK(bands[b].f_low >= curve.points.front().first);
      CHECK(bands[b].f_high <= curve.points.back().first);
      if (b) CHECK(bands[b].f_low > bands[b - 1].f_high);
      width += bands[b].f_high - bands[b].f_low;
    }
    CHECK(width <= prev_width);
    prev_width = width;
  }
}

TEST_SUITE_END();
