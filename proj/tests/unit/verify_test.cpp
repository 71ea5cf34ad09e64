#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "geohydro/verify/checks.hpp"
#include "geohydro/verify/conservation.hpp"
#include "geohydro/verify/differences.hpp"

namespace geohydro {
namespace {

// ------------------------------------------------------------------ reports

TEST(Report, NanNeverPasses) {
  CheckReport r("nan");
  r.add_metric("x", std::numeric_limits<double>::quiet_NaN(), 1.0);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.to_json()["metrics"][0]["value"].is_null());
}

TEST(Report, BoundedMetricChecksBothEnds) {
  CheckReport r("bounded");
  r.add_bounded("low", 3.0, 3.5, 4.5);
  EXPECT_FALSE(r.passed());
  CheckReport s("bounded");
  s.add_bounded("mid", 4.0, 3.5, 4.5);
  EXPECT_TRUE(s.passed());
}

TEST(Report, RuntimeErrorBecomesFailingReport) {
  const CheckReport r = run_check("boom", Json::object(), [](CheckReport&) {
    throw Error(ErrorKind::VacuumFormation, "density hit zero");
  });
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.error().has_value());
  EXPECT_NE(r.error()->find("VacuumFormation"), std::string::npos);
}

TEST(Report, ConfigErrorPropagates) {
  EXPECT_THROW(run_check("cfg", Json::object(),
                         [](CheckReport&) { throw Error(ErrorKind::ConfigError, "bad"); }),
               Error);
}

TEST(Report, JsonLeavesOutRuntimeByDefault) {
  CheckReport r("t");
  r.set_runtime(1.5);
  EXPECT_FALSE(r.to_json().contains("runtime_seconds"));
  EXPECT_EQ(r.to_json(true)["runtime_seconds"], 1.5);
}

TEST(Convergence, FloorReplacesOrderForConvergedPairs) {
  CheckReport r("conv");
  add_convergence(r, "order", {1e-6, 6.25e-8, 1e-14}, 3.5, 1e-12);
  ASSERT_NE(r.find("order[0]"), nullptr);
  EXPECT_NEAR(r.find("order[0]")->value, 4.0, 1e-12);
  ASSERT_NE(r.find("order[1].floor"), nullptr);
  EXPECT_TRUE(r.passed());
}

TEST(Convergence, StalledErrorFails) {
  CheckReport r("conv");
  add_convergence(r, "order", {1e-6, 1e-6}, 2.0, 1e-12);
  EXPECT_FALSE(r.passed());
}

TEST(Differences, CentralStencilsAreExactOnQuartics) {
  const auto f = [](double t) { return 1.0 + t - 2.0 * t * t + 0.5 * t * t * t * t; };
  const double t = 0.3, h = 0.1;
  const double d1 = central_first(f(t - 2 * h), f(t - h), f(t + h), f(t + 2 * h), h);
  const double d2 = central_second(f(t - 2 * h), f(t - h), f(t), f(t + h), f(t + 2 * h), h);
  EXPECT_NEAR(d1, 1.0 - 4.0 * t + 2.0 * t * t * t, 1e-13);
  EXPECT_NEAR(d2, -4.0 + 6.0 * t * t, 1e-11);
}

// ---------------------------------------------------------------- oracles

TEST(Conventions, TransportSignOracleSelectsPullback) {
  const TransportSignOracle o = transport_sign_oracle();
  EXPECT_EQ(o.sign, kConventions.transport_sign);
  EXPECT_LT(o.residual_plus, 1e-7);
  EXPECT_GT(o.residual_minus, 1e3 * o.residual_plus);
}

// ------------------------------------------------- default configs and faults

struct CheckCase {
  const char* name;
  const char* fault_key;
};

class DefaultCheck : public ::testing::TestWithParam<CheckCase> {};

TEST_P(DefaultCheck, PassesWithDefaults) {
  const CheckReport r = run_named_check(GetParam().name, Json::object());
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST_P(DefaultCheck, OnePercentFaultFails) {
  const CheckReport r = run_named_check(GetParam().name, Json{{GetParam().fault_key, 1.01}});
  EXPECT_FALSE(r.passed()) << r.to_json().dump(2);
}

TEST_P(DefaultCheck, ReportIsDeterministic) {
  const std::string a = run_named_check(GetParam().name, Json::object()).to_json().dump();
  const std::string b = run_named_check(GetParam().name, Json::object()).to_json().dump();
  EXPECT_EQ(a, b);
}

TEST_P(DefaultCheck, RejectsUnknownKeys) {
  try {
    run_named_check(GetParam().name, Json{{"tolerence", 1.0}});
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
  }
}

TEST_P(DefaultCheck, EveryResidualHasBothNorms) {
  const CheckReport r = run_named_check(GetParam().name, Json::object());
  for (const auto& m : r.metrics()) {
    const auto dot = m.label.rfind(".sup");
    if (dot != std::string::npos && dot + 4 == m.label.size()) {
      EXPECT_NE(r.find(m.label.substr(0, dot) + ".l2"), nullptr) << m.label;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Checks, DefaultCheck,
    ::testing::Values(CheckCase{"kahler", "metric_scale"}, CheckCase{"conjugacy", "coupling_scale"},
                      CheckCase{"neumann_fisher", "potential_scale"},
                      CheckCase{"hasimoto_nls", "cubic_scale"},
                      CheckCase{"twohs_sasaki", "sigma_scale"},
                      CheckCase{"much_horizontal", "velocity_scale"},
                      CheckCase{"hamilton_jacobi", "force_scale"},
                      CheckCase{"fr_geodesic", "accel_scale"}),
    [](const auto& info) { return std::string(info.param.name); });

// ------------------------------------------------------------ named examples

TEST(Kahler, SymplecticFaultFails) {
  EXPECT_FALSE(check_kahler(KahlerConfig::from_json({{"symplectic_scale", 1.01}})).passed());
}

TEST(Kahler, ZeroTangentsGiveZeroDiscrepancy) {
  const CheckReport r = check_kahler(KahlerConfig::from_json({{"zero_tangents", true}}));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.find("isometry.max_relative_error")->value, 0.0);
  EXPECT_EQ(r.find("symplectic.max_relative_error")->value, 0.0);
}

TEST(Conjugacy, TrivialStateHasZeroDifference) {
  const CheckReport r = check_conjugacy(
      ConjugacyConfig::from_json({{"V", "0"}, {"rho0", "1"}, {"theta0", "0"}, {"n", 32}}));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  EXPECT_LE(r.find("difference.sup")->value, 1e-13);
}

TEST(Conjugacy, CubicNlsPasses) {
  const CheckReport r = check_conjugacy(ConjugacyConfig::from_json(
      {{"V", "0"}, {"nonlinearity", {{"law", "linear"}, {"kappa", 1.0}}}}));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(NeumannFisher, StationaryEigenfunction) {
  const CheckReport r = check_neumann_fisher(NeumannFisherConfig::from_json(
      {{"f0", "sqrt(2)*cos(3*x)"}, {"expected_lambda", -9.0}}));
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  EXPECT_LE(r.find("lambda_error")->value, 1e-12);
  EXPECT_LE(r.find("newton_residual.sup")->value, 1e-10);
}

TEST(NeumannFisher, WrongGradientScaleFails) {
  EXPECT_FALSE(
      check_neumann_fisher(NeumannFisherConfig::from_json({{"gradient_scale", 1.0}})).passed());
}

TEST(NeumannFisher, MovingInitialVelocityPasses) {
  EXPECT_TRUE(
      check_neumann_fisher(NeumannFisherConfig::from_json({{"f_dot0", "0.3*sin(x)"}})).passed());
}

TEST(Hasimoto, UnitCircleRecoversHalfPhaseRate) {
  const CheckReport r = check_hasimoto_nls(HasimotoConfig{});
  EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
  EXPECT_LE(r.find("modulus_variation")->value, 1e-8);
  EXPECT_LE(r.find("phase_rate_error")->value, 1e-6);
}

TEST(Hasimoto, TwistedCurvePassesAndDetectsFault) {
  EXPECT_TRUE(check_hasimoto_nls(HasimotoConfig::from_json({{"curve", "twisted"}})).passed());
  EXPECT_FALSE(check_hasimoto_nls(HasimotoConfig::from_json({{"curve", "twisted"}, {"cubic_scale", 1.01}}))
                   .passed());
}

TEST(TwoHS, ZeroSigmaStaysZero) {
  const CheckReport r = check_twohs_sasaki(TwoHSConfig{});
  EXPECT_LE(r.find("zero_sigma.max")->value, 1e-10);
}

TEST(MuchHorizontal, UniformDensityGivesZeroVelocity) {
  const CheckReport r =
      check_much_horizontal(MuchHorizontalConfig::from_json({{"rho0", "1"}, {"rho1", "1"}}));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.find("much_equation.sup")->value, 0.0);
  EXPECT_EQ(r.find("mean_velocity")->value, 0.0);
}

TEST(MuchHorizontal, OppositeTransportSignFails) {
  EXPECT_FALSE(
      check_much_horizontal(MuchHorizontalConfig::from_json({{"transport_sign", -1}})).passed());
}

TEST(FrGeodesic, LengthFaultFails) {
  EXPECT_FALSE(check_fr_geodesic(FrGeodesicConfig::from_json({{"length_scale", 1.01}})).passed());
}

TEST(FrGeodesic, GridSizeMustBePowerOfTwo) {
  EXPECT_THROW(FrGeodesicConfig::from_json({{"n", 12}}), Error);
}

TEST(FrGeodesic, NonPositiveEndpointAbortsWithReport) {
  const CheckReport r = check_fr_geodesic(FrGeodesicConfig::from_json({{"rho1", "cos(x)"}}));
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.error().has_value());
}

TEST(Correspondence, UnknownKindIsConfigError) {
  EXPECT_THROW(check_correspondence("nope", Json::object()), Error);
}

// ------------------------------------------------------------ conservation

RunManifest run_manifest(const Json& config) { return simulate(RunConfig::from_json(config)).manifest; }

TEST(Conservation, PlaneWaveDriftsVanish) {
  const RunManifest m = run_manifest({{"equation", "schrodinger"},
                                      {"n", 32},
                                      {"dt", 0.01},
                                      {"t_final", 1.0},
                                      {"save_every", 10},
                                      {"initial", {{"psi_re", "cos(2*x)"}, {"psi_im", "sin(2*x)"}}}});
  const CheckReport r = conservation_report(m);
  EXPECT_TRUE(r.passed());
  for (const auto& metric : r.metrics()) EXPECT_LE(metric.value, 1e-12) << metric.label;
}

TEST(Conservation, FixedPointHasZeroDrift) {
  const RunManifest m = run_manifest({{"equation", "hydro"}, {"n", 32}, {"dt", 0.01}, {"t_final", 0.5}});
  const CheckReport r = conservation_report(m);
  EXPECT_TRUE(r.passed());
  for (const auto& metric : r.metrics()) EXPECT_EQ(metric.value, 0.0) << metric.label;
}

TEST(Conservation, CoarseStepFails) {
  const Json base{{"equation", "much"},
                  {"n", 64},
                  {"t_final", 2.0},
                  {"initial", {{"u", "0.3*sin(x) + 0.1"}}},
                  {"drift_bounds", {{"energy", 1e-10}}}};
  Json fine = base, coarse = base;
  fine["dt"] = 0.01;
  coarse["dt"] = 0.2;
  EXPECT_TRUE(conservation_report(run_manifest(fine)).passed());
  const CheckReport r = conservation_report(run_manifest(coarse));
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.find("energy.drift")->value, 1e-10);
}

TEST(Conservation, EmptyRunIsMissingSnapshots) {
  const CheckReport r = conservation_report(RunManifest{});
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.error().has_value());
  EXPECT_NE(r.error()->find("MissingSnapshots"), std::string::npos);
}

}  // namespace
}  // namespace geohydro
