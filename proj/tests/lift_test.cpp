#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "helixlift/helixlift.hpp"
#include "test_support.hpp"

namespace helixlift {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no GeometryError";
  return ErrorKind::InvalidArgument;
}

ParamCurve UnitCubic() { return reparam_by_arclength(fixtures::paper_cubic(), 256); }

LiftSpec Spec(double theta, AxisMode mode = AxisMode::unit) {
  LiftSpec s;
  s.theta = theta;
  s.axis_mode = mode;
  return s;
}

TEST(LiftCurve, HalfPiIsTranslation) {
  const ParamCurve base = fixtures::circular_helix(1.0, 1.0);
  LiftSpec spec = Spec(kPi / 2, AxisMode::explicit_axis);
  spec.axis = Vec3{0.0, 0.0, 1.0};
  spec.offset = {1.0, -2.0, 0.5};
  const ParamCurve bar = lift_curve_literal(base, spec);
  for (double s : {0.0, 1.0, 3.0, 6.0}) {
    EXPECT_LT(max_abs_diff(bar.position(s), base.position(s) + spec.offset), 1e-15);
  }
}

TEST(LiftCurve, ZeroAngleIsLine) {
  const ParamCurve base = fixtures::circular_helix(1.0, 1.0);
  LiftSpec spec = Spec(0.0, AxisMode::explicit_axis);
  spec.axis = Vec3{0.0, 0.6, 0.8};
  spec.s0 = 1.0;
  spec.offset = {3.0, 0.0, 0.0};
  const ParamCurve bar = lift_curve_literal(base, spec);
  for (double s : {0.0, 1.0, 3.0, 6.0}) {
    EXPECT_LT(max_abs_diff(bar.position(s), spec.offset + (s - 1.0) * *spec.axis), 1e-15);
    EXPECT_LT(max_abs_diff(bar.eval(s, 2), {}), 1e-15);
  }
}

TEST(LiftCurve, PrintedAxisExampleComponents) {
  const ParamCurve bar = lift_curve_literal(fixtures::paper_cubic(), Spec(kPi / 4, AxisMode::paper_printed));
  for (double s : {0.5, 1.0, 2.0}) {
    const Vec3 p = bar.position(s);
    const double q = s * s + 2.0;
    EXPECT_NEAR(p.x, ((3 * kSqrt2 + 1) * s * s * s + (6 * kSqrt2 + 2) * s) / q, 1e-9);
    EXPECT_NEAR(p.x, (3 * kSqrt2 + 1) * s, 1e-9);
    EXPECT_NEAR(p.y, 3 * kSqrt2 / 2 * s * s, 1e-9);
    EXPECT_NEAR(p.z, (kSqrt2 / 2 * std::pow(s, 5) + (kSqrt2 + 1) * s * s * s + 2 * s) / q, 1e-9);
  }
  EXPECT_NEAR(norm(std::get<LiftedShape>(bar.shape()).axis), 2.0, 1e-12);
}

TEST(LiftCurve, UnitAxisHasUnitNorm) {
  const ParamCurve bar = lift_curve(UnitCubic(), Spec(kPi / 4));
  EXPECT_NEAR(norm(std::get<LiftedShape>(bar.shape()).axis), 1.0, 1e-12);
}

TEST(LiftCurve, Preconditions) {
  EXPECT_EQ(KindOf([] { lift_curve(fixtures::paper_cubic(), Spec(kPi / 4)); }), ErrorKind::NotUnitSpeed);
  EXPECT_EQ(KindOf([] { lift_curve(UnitCubic(), Spec(kPi / 3)); }), ErrorKind::ThetaMismatch);
  const ParamCurve twisted = reparam_by_arclength(fixtures::twisted_cubic(), 128);
  EXPECT_EQ(KindOf([&] { lift_curve(twisted, Spec(kPi / 4)); }), ErrorKind::NotAHelix);
  EXPECT_EQ(KindOf([] { lift_curve(UnitCubic(), Spec(2.0)); }), ErrorKind::InvalidArgument);
  LiftSpec no_axis = Spec(kPi / 4, AxisMode::explicit_axis);
  EXPECT_EQ(KindOf([&] { lift_curve(UnitCubic(), no_axis); }), ErrorKind::InvalidField);
}

TEST(LiftHelix, ReparameterizesWhenNeeded) {
  const LiftResult r = lift_helix(fixtures::paper_cubic(), Spec(kPi / 4));
  EXPECT_TRUE(r.reparameterized);
  EXPECT_NEAR(r.base.domain().length(), 90.0, 1e-9);
  EXPECT_TRUE(is_unit_speed(r.base, 256));
  const ParamCurve helix = reparam_by_arclength(fixtures::circular_helix(1.0, 1.0), 128);
  EXPECT_FALSE(lift_helix(helix, Spec(kPi / 4)).reparameterized);
}

TEST(LiftCurve, DerivativesMatchOracle) {
  const ParamCurve bar = lift_curve(UnitCubic(), Spec(kPi / 4));
  for (double s : {5.0, 45.0, 77.5}) {
    EXPECT_LT(max_abs_diff(bar.eval(s, 1), testing::fd_velocity(bar, s, 1e-4)), 1e-6);
    EXPECT_LT(max_abs_diff(bar.eval(s, 2), testing::fd_acceleration(bar, s, 1e-3)), 1e-6);
  }
}

TEST(ClosedForm, QuarterPi) {
  const ClosedFormFrame f = closed_form_lift_frame(1.0 / 6, 1.0 / 6, kPi / 4);
  EXPECT_NEAR(f.lambda, kSqrt2 / 4 + 0.25, 1e-15);
  EXPECT_NEAR(f.lambda, 0.60355339059327376, 1e-15);
  EXPECT_NEAR(f.mu, 0.10059223176554563, 1e-15);
  EXPECT_NEAR(f.c, -0.22559175289915123, 1e-15);
  const double den = std::sqrt(1.0 + std::cos(kPi / 4) * std::sin(kPi / 2));
  EXPECT_NEAR(den, std::sqrt(1.0 + kSqrt2 / 2), 1e-15);
  EXPECT_NEAR(1.0 / den, 2.0 / std::sqrt(4.0 + 2.0 * kSqrt2), 1e-15);
  EXPECT_NEAR(f.tbar_T_coeff, 0.92387953251128676, 1e-15);
  EXPECT_NEAR(f.tbar_B_coeff, 0.38268343236508977, 1e-15);
  EXPECT_NEAR(f.tbar_T_coeff * f.tbar_T_coeff + f.tbar_B_coeff * f.tbar_B_coeff, 1.0, 1e-14);
  EXPECT_NEAR(f.bbar_T_coeff * f.bbar_T_coeff + f.bbar_B_coeff * f.bbar_B_coeff, 1.0, 1e-14);
  EXPECT_EQ(c_factor(1.0 / 6, 1.0 / 6, kPi / 4), f.c);
}

TEST(ClosedForm, ConstantCurvatureGivesConstantC) {
  const ParamCurve helix = fixtures::circular_helix(2.0, 1.0);
  const auto [k1, t1] = curvature_torsion(helix, 0.3);
  const auto [k2, t2] = curvature_torsion(helix, 4.1);
  EXPECT_NEAR(c_factor(k1, t1, 1.1), c_factor(k2, t2, 1.1), 1e-14);
  EXPECT_TRUE(std::isfinite(c_factor(0.5, 0.5, kPi / 4)));
}

TEST(ClosedForm, DegenerateDenominator) {
  EXPECT_EQ(KindOf([] { closed_form_lift_frame(0.0, 0.0, kPi / 2); }), ErrorKind::DegenerateDenominator);
}

TEST(ClosedForm, TangentCoefficientIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta(0.0, kPi / 2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double th = theta(rng);
    const double p = std::sin(th) + std::cos(th) * std::cos(th);
    const double q = std::cos(th) * std::sin(th);
    worst = std::fmax(worst, std::fabs(p * p + q * q - (1.0 + std::cos(th) * std::sin(2.0 * th))));
  }
  EXPECT_LE(worst, 1e-12);
}

// Oracle-level properties of unit-axis lifts of unit-speed general helices.
class LiftOracle : public ::testing::TestWithParam<int> {};

ParamCurve HelixFixture(int i) {
  switch (i) {
    case 0:
      return UnitCubic();
    case 1:
      return reparam_by_arclength(fixtures::circular_helix(1.0, 1.0), 128);
    case 2:
      return reparam_by_arclength(fixtures::circular_helix(2.0, 1.0), 128);
    default:
      return reparam_by_arclength(fixtures::circular_helix(1.0, 3.0), 128);
  }
}

TEST_P(LiftOracle, TangentAxisAngleAndNormal) {
  const ParamCurve base = HelixFixture(GetParam());
  const double theta = lancret_test(base, 128).theta;
  const ParamCurve bar = lift_curve(base, Spec(theta));
  const Vec3 a = std::get<LiftedShape>(bar.shape()).axis;
  const ClosedFormFrame cf = closed_form_lift_frame(1.0, 1.0, theta);
  const double h = Tolerances{}.fd_step;
  std::vector<double> angles;
  for (double s : oracle_grid(base.domain(), 50, h)) {
    const FrenetFrame f = frame_at(base, s);
    const FrenetFrame o = oracle_frame(bar, s, h);
    EXPECT_LT(max_abs_diff(o.T, cf.tbar_T_coeff * f.T + cf.tbar_B_coeff * f.B), 1e-6) << s;
    EXPECT_NEAR(std::fabs(dot(o.N, f.N)), 1.0, 1e-6) << s;
    angles.push_back(dot(a, o.T));
  }
  EXPECT_LE(constancy(angles).rel_dev, 1e-6);
  const double c = std::cos(theta), si = std::sin(theta);
  EXPECT_NEAR(constancy(angles).mean, c * (1 + si) / std::sqrt(1 + c * std::sin(2 * theta)), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, LiftOracle, ::testing::Range(0, 4));

TEST(LiftSpecIo, AxisModeStrings) {
  EXPECT_EQ(to_string(AxisMode::paper_printed), "paper_printed");
  EXPECT_EQ(axis_mode_from_string("explicit"), AxisMode::explicit_axis);
  EXPECT_EQ(KindOf([] { axis_mode_from_string("diagonal"); }), ErrorKind::InvalidField);
}

}  // namespace
}  // namespace helixlift
