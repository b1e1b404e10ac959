#include <gtest/gtest.h>

#include <cmath>

#include "mbinv/blur_spec.hpp"
#include "mbinv/blur_synth.hpp"
#include "mbinv/blur_theory.hpp"
#include "mbinv/moments.hpp"
#include "mbinv/shapes.hpp"
#include "mbinv/verify.hpp"
#include "support/oracles.hpp"

using namespace mbinv;

namespace {

// Single bright pixel at continuous position (x, y) of an n x n raster.
Image point_mass(std::size_t n, long x, long y) {
  std::vector<double> px(n * n, 0.0);
  const long half = static_cast<long>(n - 1) / 2;
  px[static_cast<std::size_t>(half - y) * n + static_cast<std::size_t>(half + x)] = 1.0;
  return Image(n, n, std::move(px));
}

double max_abs_diff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) worst = std::max(worst, std::abs(a.pixels()[i] - b.pixels()[i]));
  return worst;
}

}  // namespace

TEST(TimeSampling, MidpointNodes) {
  const TimeSampling s{4};
  EXPECT_DOUBLE_EQ(s.node(0, 2.0), 0.25);
  EXPECT_DOUBLE_EQ(s.node(3, 2.0), 1.75);
  EXPECT_DOUBLE_EQ(TimeSampling{}.node(100, 1.0), 0.5);  // 201 nodes include T/2
  EXPECT_THROW(TimeSampling{0}.validate(), std::invalid_argument);
}

TEST(LinearBlur, ZeroMotionIsIdentity) {
  const Image img = oracle::blob(1);
  EXPECT_EQ(synthesize_linear_blur(img, {0.0, 0.0, 1.0}), img);
}

TEST(LinearBlur, PointMassStreakCentroid) {
  const Image src = point_mass(41, 0, 0);
  const Image out = synthesize_linear_blur(src, {10.0, 0.0, 1.0}, {201});
  EXPECT_LE(oracle::rel_diff(out.total_mass(), src.total_mass()), 1e-6);
  const Centroid c = centroid(out);
  EXPECT_NEAR(c.xc, 5.0, 0.05);
  EXPECT_NEAR(c.yc, 0.0, 0.05);
  // The streak is horizontal: only the center row carries mass.
  for (std::size_t r = 0; r < 41; ++r)
    if (r != 20) EXPECT_EQ(out.row(r)[25], 0.0);
}

TEST(LinearBlur, PositiveBMovesContentUp) {
  const Centroid c = centroid(synthesize_linear_blur(point_mass(41, 0, 0), {0.0, 6.0, 1.0}));
  EXPECT_NEAR(c.yc, 3.0, 0.05);
}

TEST(LinearBlur, OnlyDisplacementProductsMatter) {
  const Image img = oracle::blob(3);
  EXPECT_EQ(synthesize_linear_blur(img, {6.0, -4.0, 1.0}, {51}), synthesize_linear_blur(img, {12.0, -8.0, 0.5}, {51}));
}

TEST(LinearBlur, MassConservedAndCentroidShifted) {
  const Image img = oracle::blob(4);
  const Image out = synthesize_linear_blur(img, {10.0, 6.0, 1.0});
  EXPECT_LE(oracle::rel_diff(out.total_mass(), img.total_mass()), 1e-6);
  const Centroid before = centroid(img), after = centroid(out);
  const Centroid predicted = predict_blurred_centroid(before, {10.0, 6.0, 1.0});
  EXPECT_NEAR(after.xc, predicted.xc, 0.05);
  EXPECT_NEAR(after.yc, predicted.yc, 0.05);
}

TEST(LinearBlur, MarginViolationIsReported) {
  const Image tight = make_rectangle(30, 30, 5, 5, 20, 20);
  EXPECT_THROW(synthesize_linear_blur(tight, {4.0, 0.0, 1.0}), MarginError);
  EXPECT_NO_THROW(synthesize_linear_blur(tight, {3.0, 0.0, 1.0}));
  EXPECT_THROW(synthesize_linear_blur(tight, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(LinearBlur, MatchesTheoryOnBlob) {
  const VerifyReport report =
      verify_blur_prediction(oracle::blob(5), BlurSpec::make_linear(10.0, 6.0, 1.0), {201}, 4);
  EXPECT_LE(report.max_error(), 1e-2);
  EXPECT_LE(std::abs(report.mass_rel_change()), 1e-6);
}

TEST(LinearBlur, SnapshotAverageConvergesInSampleCount) {
  // Moments of the n-sample image approach those of a dense reference as n
  // doubles. The gap to the exact theory does not shrink the same way: the
  // midpoint rule loses A^2/(3n^2) of streak variance while bilinear
  // sampling adds about 1/6 px^2, so the theory error climbs toward that
  // fixed interpolation floor from below.
  const Image img = oracle::blob(6);
  const LinearBlurParams params{7.2, -9.6, 1.0};
  const MomentSet reference = moments_about(synthesize_linear_blur(img, params, {1024}), {}, 4);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32, 64, 128, 256}) {
    const MomentSet m = moments_about(synthesize_linear_blur(img, params, {n}), {}, 4);
    const auto scales = order_scales(reference);
    double gap = 0.0;
    for (int order = 0; order <= 4; ++order)
      for (int q = 0; q <= order; ++q)
        gap = std::max(gap, relative_moment_error(reference.at(order - q, q), m.at(order - q, q),
                                                  scales[static_cast<std::size_t>(order)]));
    EXPECT_LT(gap, previous) << "n=" << n;
    previous = gap;
    EXPECT_LE(verify_blur_prediction(img, BlurSpec::make_linear(7.2, -9.6, 1.0), {n}, 4).max_error(), 1e-3);
  }
}

TEST(RotationalBlur, ZeroSweepIsIdentity) {
  const Image img = oracle::blob(1);
  EXPECT_EQ(synthesize_rotational_blur(img, {0.0, 1.0, {}}), img);
}

TEST(RotationalBlur, SymmetricDiskIsFixedPoint) {
  const Image disk = make_disk(129, 20.0, 30.0);
  for (double sweep : {0.3, 1.0, 2.5}) {
    const Image out = synthesize_rotational_blur(disk, {sweep, 1.0, {}});
    EXPECT_LE(max_abs_diff(out, disk), 1e-3) << "sweep " << sweep;
  }
}

TEST(RotationalBlur, SweepSenseMatchesFirstMomentFormula) {
  // Point mass on the +x axis: m10' = m10 sin(wT)/wT and m01' = -m10 (1 - cos(wT))/wT,
  // i.e. the arc bends toward negative y (clockwise sweep).
  const double sweep = 0.4;
  const Image src = point_mass(61, 20, 0);
  const MomentSet out = moments_about(synthesize_rotational_blur(src, {sweep, 1.0, {}}), {}, 1);
  EXPECT_NEAR(out.at(1, 0), 20.0 * std::sin(sweep) / sweep, 1e-2 * 20.0);
  EXPECT_NEAR(out.at(0, 1), -20.0 * (1.0 - std::cos(sweep)) / sweep, 1e-2 * 20.0);
  EXPECT_LT(out.at(0, 1), -1.0);
}

TEST(RotationalBlur, SecondOrderMatchesClosedFormOnBlob) {
  const double sweep = 0.4;
  const Image img = oracle::blob(7);
  const MomentSet src = moments_about(img, {}, 2);
  const MomentSet out = moments_about(synthesize_rotational_blur(img, {sweep, 1.0, {}}), {}, 2);
  const double s = std::sin(sweep), c = std::cos(sweep), w = sweep;
  const double m10 = src.at(1, 0), m01 = src.at(0, 1), m20 = src.at(2, 0), m11 = src.at(1, 1), m02 = src.at(0, 2);
  const double half = (c * s + w) / (2 * w), other = (w - c * s) / (2 * w), mix = s * s / w;
  const double expect10 = (m10 * s + m01 * (1 - c)) / w;
  const double expect01 = (m01 * s - m10 * (1 - c)) / w;
  const double expect20 = m20 * half + m02 * other + m11 * mix;
  const double expect02 = m02 * half + m20 * other - m11 * mix;
  const double expect11 = m11 * (2 * c * s) / (2 * w) + (m02 - m20) * s * s / (2 * w);
  const double first_scale = src.at(0, 0) * std::sqrt((m20 + m02) / src.at(0, 0));
  EXPECT_LE(std::abs(out.at(1, 0) - expect10), 1e-2 * first_scale);
  EXPECT_LE(std::abs(out.at(0, 1) - expect01), 1e-2 * first_scale);
  EXPECT_LE(std::abs(out.at(2, 0) - expect20), 1e-2 * (m20 + m02));
  EXPECT_LE(std::abs(out.at(0, 2) - expect02), 1e-2 * (m20 + m02));
  EXPECT_LE(std::abs(out.at(1, 1) - expect11), 1e-2 * (m20 + m02));
}

TEST(RotationalBlur, MatchesTheoryAndConservesMass) {
  const VerifyReport report = verify_blur_prediction(oracle::blob(8), BlurSpec::make_rotational(0.4, 1.0), {201}, 4);
  EXPECT_LE(report.max_error(), 1e-2);
  EXPECT_LE(std::abs(report.mass_rel_change()), 1e-6);
}

TEST(RotationalBlur, ErrorNonIncreasingAsSamplesDouble) {
  // A 0.5 rad sweep spreads far more than a pixel per step, so time
  // discretization dominates the interpolation floor until n is large.
  const Image img = oracle::blob(6);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {8, 16, 32, 64, 128, 256}) {
    const double err = verify_blur_prediction(img, BlurSpec::make_rotational(0.5, 1.0), {n}, 4).max_error();
    EXPECT_LE(err, previous * (1.0 + 1e-2)) << "n=" << n;
    previous = err;
  }
}

TEST(RotationalBlur, OffCenterPivot) {
  const Image img = oracle::blob(9, {256, 256, 70, 5, 8.0, 20.0});
  const VerifyReport report =
      verify_blur_prediction(img, BlurSpec::make_rotational(0.3, 1.0, {12.0, -7.0}), {201}, 4);
  EXPECT_LE(report.max_error(), 1e-2);
}

TEST(RotationalBlur, MarginViolationIsReported) {
  const Image wide = make_rectangle(40, 40, 1, 1, 38, 38);
  EXPECT_THROW(synthesize_rotational_blur(wide, {0.2, 1.0, {}}), MarginError);
}

TEST(Rotation, ZeroAngleIsIdentity) {
  const Image img = oracle::blob(10);
  EXPECT_EQ(synthesize_rotation(img, 0.0), img);
}

TEST(Rotation, HalfTurnTwiceRestoresImage) {
  const Image img = oracle::blob(11);
  const Image once = synthesize_rotation(img, M_PI);
  const Image twice = synthesize_rotation(once, M_PI);
  // A half turn on a square grid maps pixel centers onto pixel centers, so
  // the only interpolation error is from cos(pi) and sin(pi) rounding.
  EXPECT_LE(max_abs_diff(twice, img), 2e-12);
  EXPECT_GT(max_abs_diff(once, img), 0.1);
}

TEST(Rotation, CounterClockwiseSense) {
  const Image src = point_mass(61, 20, 0);
  const Centroid c = centroid(synthesize_rotation(src, M_PI / 2));
  EXPECT_NEAR(c.xc, 0.0, 1e-9);
  EXPECT_NEAR(c.yc, 20.0, 1e-9);
}

TEST(Translate, ShiftsContent) {
  const Image src = point_mass(21, 0, 0);
  const Centroid c = centroid(translate(src, 3, -4));
  EXPECT_DOUBLE_EQ(c.xc, 3.0);
  EXPECT_DOUBLE_EQ(c.yc, -4.0);
  EXPECT_THROW(translate(src, 11, 0), MarginError);
}

TEST(BlurSpec, JsonRoundTrip) {
  const BlurSpec lin = BlurSpec::make_linear(1.5, -2.0, 3.0);
  const BlurSpec rot = BlurSpec::make_rotational(0.25, 2.0, {1.0, -3.0});
  const BlurSpec lin_back = blur_spec_from_json(BlurKind::Linear, blur_params_to_json(lin));
  const BlurSpec rot_back = blur_spec_from_json(BlurKind::Rotational, blur_params_to_json(rot));
  EXPECT_EQ(lin_back.linear.a, 1.5);
  EXPECT_EQ(lin_back.linear.T, 3.0);
  EXPECT_EQ(rot_back.rotational.omega, 0.25);
  EXPECT_EQ(rot_back.rotational.center, (Point{1.0, -3.0}));
  EXPECT_EQ(parse_blur_kind("rotational"), BlurKind::Rotational);
  EXPECT_THROW(parse_blur_kind("radial"), std::invalid_argument);
  EXPECT_EQ(apply_blur(oracle::blob(1), BlurSpec::none()), oracle::blob(1));
}
