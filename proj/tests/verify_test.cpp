#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helixlift/helixlift.hpp"

namespace helixlift {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind KindOf(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no GeometryError";
  return ErrorKind::InvalidArgument;
}

TEST(OracleFrame, ExampleCubic) {
  const ParamCurve cubic = fixtures::paper_cubic();
  const FrenetFrame at1 = oracle_frame(cubic, 1.0, 1e-3);
  EXPECT_LT(max_abs_diff(at1.T, {2.0 / 3, 2.0 / 3, 1.0 / 3}), 1e-6);
  const FrenetFrame at0 = oracle_frame(cubic, 0.0, 1e-3);
  EXPECT_LT(max_abs_diff(at0.N, {0.0, 1.0, 0.0}), 1e-6);
  EXPECT_NEAR(at0.kappa, 1.0 / 6, 1e-6);
  EXPECT_NEAR(at0.tau, 1.0 / 6, 1e-6);
}

TEST(OracleFrame, Errors) {
  const ParamCurve point = ParamCurve::polynomial({{{1.0}, {2.0}, {3.0}}}, {0.0, 1.0});
  EXPECT_EQ(KindOf([&] { oracle_frame(point, 0.5, 1e-3); }), ErrorKind::ZeroSpeed);
  EXPECT_EQ(KindOf([] { oracle_frame(fixtures::line(), 0.5, 1e-3); }), ErrorKind::DegenerateFrame);
  EXPECT_EQ(KindOf([] { oracle_frame(fixtures::paper_cubic(), -2.9995, 1e-3); }), ErrorKind::StencilOutOfDomain);
  EXPECT_EQ(KindOf([] { oracle_grid({0.0, 1e-3}, 10, 1e-3); }), ErrorKind::StencilOutOfDomain);
}

TEST(CompareFrames, SignAlignment) {
  const FrenetFrame f = frame_at(fixtures::twisted_cubic(), 0.4);
  const FrameDelta self = compare_frames(f, f);
  EXPECT_EQ(self.max_direction(), 0.0);
  EXPECT_EQ(self.dkappa, 0.0);
  EXPECT_EQ(self.dtau, 0.0);

  FrenetFrame flipped = f;
  flipped.N = -1.0 * f.N;
  flipped.B = -1.0 * f.B;
  EXPECT_EQ(compare_frames(f, flipped).max_direction(), 0.0);

  FrenetFrame shifted = f;
  shifted.T = f.T + Vec3{1e-3, 0, 0};
  shifted.kappa = 2.0 * f.kappa;
  const FrameDelta d = compare_frames(f, shifted);
  EXPECT_NEAR(d.dT, 1e-3, 1e-15);
  EXPECT_NEAR(d.dkappa, 1.0, 1e-15);
}

TEST(CompareFrames, ExactVersusOracle) {
  const ParamCurve cubic = fixtures::paper_cubic();
  const FrameDelta d = compare_frames(frame_at(cubic, 1.0), oracle_frame(cubic, 1.0, 1e-3));
  EXPECT_LT(d.dT, 1e-6);
  EXPECT_LT(d.dN, 1e-6);
  EXPECT_LT(d.dB, 1e-6);
  EXPECT_LT(d.dkappa, 1e-6);
  EXPECT_LT(d.dtau, 1e-6);
}

TEST(OracleConvergence, SecondOrder) {
  for (const ParamCurve& c : {fixtures::paper_cubic(), fixtures::twisted_cubic()}) {
    for (double t : {-0.5, 0.3, 1.0}) {
      const ConvergenceCheck k = oracle_convergence(c, t, 1e-2);
      EXPECT_TRUE(k.pass) << t << " ratio " << k.ratio;
      EXPECT_GE(k.ratio, 3.5);
    }
  }
}

TEST(TheoremChecks, UnitCubicQuarterPi) {
  const ParamCurve unit = reparam_by_arclength(fixtures::paper_cubic(), 256);
  LiftSpec spec;
  spec.theta = kPi / 4;
  const TheoremChecks r = run_theorem_checks(unit, spec, 100);
  EXPECT_TRUE(r.theorem1.pass);
  EXPECT_LE(r.theorem1.residual, 1e-6);
  EXPECT_NEAR(r.theorem1.value, 0.92387953251128676, 1e-6);
  EXPECT_TRUE(r.theorem3.pass);
  EXPECT_GE(r.theorem3.value, 1.0 - 1e-6);
  EXPECT_TRUE(r.theorem2.pass);
  EXPECT_TRUE(r.base_slant);
  EXPECT_TRUE(r.lift_slant);
}

// Any constant axis in the T-B plane keeps Nbar = -N, so explicit axes cover
// other lift angles on the same base.
TEST(TheoremChecks, NormalParallelAcrossAngles) {
  const ParamCurve unit = reparam_by_arclength(fixtures::paper_cubic(), 256);
  const Vec3 a = helix_axis(unit, 128).axis;
  for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
    LiftSpec spec;
    spec.theta = theta;
    spec.axis_mode = AxisMode::explicit_axis;
    spec.axis = a;
    const TheoremChecks r = run_theorem_checks(unit, spec, 100);
    EXPECT_TRUE(r.theorem3.pass) << theta;
    EXPECT_GE(r.theorem3.value, 1.0 - 1e-6) << theta;
    EXPECT_TRUE(bertrand_test(unit, lift_curve(unit, spec), 100).is_bertrand) << theta;
  }
}

TEST(TheoremChecks, CircularHelicesSlantBothWays) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0}}) {
    const ParamCurve unit = reparam_by_arclength(fixtures::circular_helix(a, b), 128);
    LiftSpec spec;
    spec.theta = std::atan(a / b);
    const TheoremChecks r = run_theorem_checks(unit, spec, 100);
    EXPECT_TRUE(r.theorem2.pass);
    EXPECT_TRUE(r.base_slant);
    EXPECT_TRUE(r.lift_slant);
    EXPECT_LE(r.theorem2.residual, Tolerances{}.constancy);
    EXPECT_TRUE(r.theorem1.pass);
    EXPECT_TRUE(r.theorem3.pass);
  }
}

TEST(TheoremChecks, DegenerateAngleSkips) {
  const ParamCurve unit = reparam_by_arclength(fixtures::circular_helix(1.0, 1.0), 64);
  LiftSpec spec;
  spec.theta = kPi / 2;
  spec.axis_mode = AxisMode::explicit_axis;
  spec.axis = Vec3{0, 0, 1};
  const TheoremChecks r = run_theorem_checks(unit, spec, 32);
  EXPECT_TRUE(r.theorem1.skipped);
  EXPECT_TRUE(r.theorem2.skipped);
  EXPECT_TRUE(r.theorem3.skipped);
}

class ExampleSuite : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { report_ = new VerificationReport(run_paper_suite()); }
  static void TearDownTestSuite() { delete report_; }
  static const ErrataEntry& Entry(std::string_view id) {
    const ErrataEntry* e = report_->find(id);
    if (!e) throw std::runtime_error("missing entry " + std::string(id));
    return *e;
  }
  static VerificationReport* report_;
};

VerificationReport* ExampleSuite::report_ = nullptr;

TEST_F(ExampleSuite, Passes) {
  EXPECT_TRUE(report_->passed());
  EXPECT_TRUE(report_->oracle_convergence.pass);
  EXPECT_NEAR(report_->theorem1.value, 0.92387953251128676, 1e-6);
}

TEST_F(ExampleSuite, RequiredEntriesPopulated) {
  for (const char* id : {"example.T", "example.B", "example.kappa", "example.N", "example.axis_norm",
                         "closed_form.lambda_mu", "example.alpha_bar"}) {
    const ErrataEntry& e = Entry(id);
    EXPECT_FALSE(e.printed_value.empty()) << id;
    EXPECT_EQ(e.printed_value.size(), e.oracle_value.size()) << id;
    EXPECT_FALSE(e.location.empty()) << id;
    EXPECT_GE(e.max_abs_diff, 0.0) << id;
  }
}

TEST_F(ExampleSuite, FrameAgreesWithPrinted) {
  EXPECT_TRUE(Entry("example.T").agrees);
  EXPECT_TRUE(Entry("example.B").agrees);
  EXPECT_TRUE(Entry("example.theta").agrees);
  EXPECT_TRUE(Entry("example.alpha_bar").agrees);
  EXPECT_TRUE(Entry("example.Tbar").agrees);
  EXPECT_TRUE(Entry("closed_form.Tbar").agrees);
  EXPECT_TRUE(Entry("theorem1.axis_angle").agrees);
}

TEST_F(ExampleSuite, CurvatureRatio) {
  const ErrataEntry& e = Entry("example.kappa");
  EXPECT_FALSE(e.agrees);
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    const double s = e.samples[i];
    EXPECT_NEAR(e.oracle_value[i] / e.printed_value[i], 1.0 / (s * s + 2.0), 1e-6) << s;
  }
}

TEST_F(ExampleSuite, AxisNorm) {
  const ErrataEntry& e = Entry("example.axis_norm");
  EXPECT_FALSE(e.agrees);
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    EXPECT_NEAR(e.printed_value[i], 2.0, 1e-12);
    EXPECT_NEAR(e.oracle_value[i], 1.0, 1e-6);
  }
}

TEST_F(ExampleSuite, NormalMiddleComponent) {
  // The oracle normal's middle component is (4 - s^4)/(s^2+2)^2.
  const ErrataEntry& e = Entry("example.N");
  EXPECT_FALSE(e.agrees);
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    const double s = e.samples[i];
    const double q = s * s + 2.0;
    EXPECT_NEAR(e.oracle_value[3 * i + 1], (4.0 - s * s * s * s) / (q * q), 1e-6) << s;
  }
}

TEST_F(ExampleSuite, Deterministic) {
  EXPECT_EQ(to_json(*report_).dump(), to_json(run_paper_suite()).dump());
}

TEST_F(ExampleSuite, JsonFields) {
  const nlohmann::json j = to_json(*report_);
  for (const char* k : {"theorem1", "theorem2", "theorem3", "oracle_convergence", "example_checks", "config"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["config"]["grid"].get<int>(), 100);
}

}  // namespace
}  // namespace helixlift
