#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "geohydro/densities.hpp"
#include "test_support.hpp"

namespace geohydro {
namespace {

using testing::random_density;
using testing::random_trig;

template <class Fn>
ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::ConfigError;
}

class DensitiesTest : public ::testing::Test {
 protected:
  PeriodicGrid grid{64};
  RealField x = grid.nodes();
  DensityField uniform{grid.constant(1.0)};
};

TEST_F(DensitiesTest, DensityValidation) {
  EXPECT_EQ(error_kind([&] { DensityField d(RealField(x.cos() + 1.0)); }),
            ErrorKind::NonPositiveDensity);  // touches zero at x = pi
  EXPECT_EQ(error_kind([&] { DensityField d(grid.constant(1.1)); }), ErrorKind::MassNotUnit);
  EXPECT_NEAR(integrate(DensityField::normalized(grid.constant(3.0)).values()), 1.0, 1e-15);
  EXPECT_EQ(error_kind([&] { TangentDensity t(grid.constant(0.1)); }), ErrorKind::NonZeroMean);
}

TEST_F(DensitiesTest, SqrtMap) {
  EXPECT_LE(sup_norm(RealField(sqrt_map(uniform).values() - 1.0)), 0.0);
  const DensityField rho(RealField(1.0 + 0.5 * x.cos()));
  const SphereField f = sqrt_map(rho);
  EXPECT_LE(sup_norm(RealField(f.values() - (1.0 + 0.5 * x.cos()).sqrt())), 0.0);
  EXPECT_NEAR(integrate(f.values().square()), 1.0, 1e-15);
  EXPECT_LE(sup_norm(RealField(sqrt_map_inv(f).values() - rho.values())), 1e-13);
  const SphereField signed_f(RealField(std::sqrt(2.0) * x.cos()));
  EXPECT_EQ(error_kind([&] { sqrt_map_inv(signed_f); }), ErrorKind::NonPositiveField);
}

TEST_F(DensitiesTest, FisherRaoMetricExamples) {
  const TangentDensity c(RealField(x.cos()));
  const TangentDensity s(RealField(x.sin()));
  const TangentDensity zero(grid.constant(0.0));
  EXPECT_NEAR(fisher_rao_metric(uniform, c, c), 0.125, 1e-15);
  EXPECT_EQ(fisher_rao_metric(uniform, zero, c), 0.0);
  EXPECT_NEAR(fisher_rao_metric(uniform, c, s), 0.0, 1e-16);
}

TEST_F(DensitiesTest, FisherRaoIsSpherePullback) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const DensityField rho(random_density(grid, rng));
    const TangentDensity a(random_trig(grid, rng, 5, 1.0));
    const RealField f_dot = a.values() / (2.0 * rho.values().sqrt());
    const double expected = integrate(RealField(f_dot.square()));
    EXPECT_NEAR(fisher_rao_metric(rho, a, a), expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST_F(DensitiesTest, GeodesicIdenticalEndpoints) {
  const auto [rho, d] = fisher_rao_geodesic(uniform, uniform, 0.3);
  EXPECT_EQ(d, 0.0);
  EXPECT_LE(sup_norm(RealField(rho.values() - 1.0)), 0.0);
}

TEST_F(DensitiesTest, GeodesicDistanceMatchesQuadratureOracle) {
  // arccos( int sqrt(1 + 0.5 sin x) dx/2pi ), 30-digit adaptive quadrature
  constexpr double kOracle = 0.182777461930287861764643966027;
  const DensityField rho1(RealField(1.0 + 0.5 * x.sin()));
  EXPECT_NEAR(fisher_rao_geodesic(uniform, rho1, 0.5).distance, kOracle, 1e-13);
}

TEST_F(DensitiesTest, GeodesicMidpointSymmetry) {
  std::mt19937_64 rng(11);
  const DensityField a(random_density(grid, rng));
  const DensityField b(random_density(grid, rng));
  const RealField ab = fisher_rao_geodesic(a, b, 0.5).rho.values();
  const RealField ba = fisher_rao_geodesic(b, a, 0.5).rho.values();
  EXPECT_LE(sup_norm(RealField(ab - ba)), 1e-13);
  EXPECT_LE(sup_norm(RealField(fisher_rao_geodesic(a, b, 0.0).rho.values() - a.values())), 1e-13);
  EXPECT_LE(sup_norm(RealField(fisher_rao_geodesic(a, b, 1.0).rho.values() - b.values())), 1e-13);
}

TEST_F(DensitiesTest, GeodesicDistanceAndTriangleInequality) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityField a(random_density(grid, rng));
    const DensityField b(random_density(grid, rng));
    const DensityField c(random_density(grid, rng));
    const double ab = FisherRaoGeodesic(a, b).distance();
    const double bc = FisherRaoGeodesic(b, c).distance();
    const double ac = FisherRaoGeodesic(a, c).distance();
    EXPECT_NEAR(ab, std::acos(integrate(RealField((a.values() * b.values()).sqrt()))), 1e-12);
    EXPECT_LE(ac, ab + bc + 1e-14);
  }
}

// Independent oracle: fourth-order finite differences in t of the geodesic
// density must satisfy the Fisher-Rao Newton equation with U = 0.
TEST_F(DensitiesTest, GeodesicSolvesNewtonEquation) {
  std::mt19937_64 rng(17);
  const DensityField a(random_density(grid, rng));
  const DensityField b(random_density(grid, rng));
  const FisherRaoGeodesic geo(a, b);
  const double h = 1e-3;
  for (double t : {0.2, 0.5, 0.8}) {
    const auto rho = [&](double s) { return geo.at(s).values(); };
    const RealField rho_dot = (rho(t - 2 * h) - 8.0 * rho(t - h) + 8.0 * rho(t + h) - rho(t + 2 * h)) / (12 * h);
    const RealField rho_ddot = (-rho(t - 2 * h) + 16.0 * rho(t - h) - 30.0 * rho(t) + 16.0 * rho(t + h) -
                                rho(t + 2 * h)) / (12 * h * h);
    const auto accel = fr_newton_accel(geo.at(t), TangentDensity::projected(rho_dot), PotentialSpec{});
    EXPECT_LE(sup_norm(RealField(accel.rho_ddot - rho_ddot)), 1e-8);
    EXPECT_LE(sup_norm(RealField(geo.velocity(t) - rho_dot)), 1e-9);
  }
}

TEST_F(DensitiesTest, FisherInformation) {
  EXPECT_NEAR(fisher_information(uniform), 0.0, 1e-30);
  // 1/8 int 0.25 sin^2 x / (1 + 0.5 cos x) dx/2pi, 30-digit quadrature
  constexpr double kOracle = 0.0167468245269451691545346036559;
  EXPECT_NEAR(fisher_information(DensityField(RealField(1.0 + 0.5 * x.cos()))), kOracle, 1e-15);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityField rho(random_density(grid, rng));
    const RealField droot = spectral_derivative(RealField(rho.values().sqrt()));
    EXPECT_NEAR(fisher_information(rho), 0.5 * integrate(RealField(droot.square())), 1e-13);
  }
}

TEST_F(DensitiesTest, WassersteinOttoExamples) {
  const TangentDensity c(RealField(x.cos()));
  const TangentDensity s(RealField(x.sin()));
  const TangentDensity zero(grid.constant(0.0));
  EXPECT_NEAR(wasserstein_otto_metric(uniform, c, c), 0.5, 1e-14);
  EXPECT_NEAR(wasserstein_otto_metric(uniform, zero, c), 0.0, 1e-16);
  EXPECT_NEAR(wasserstein_otto_metric(uniform, c, s), 0.0, 1e-15);
}

TEST_F(DensitiesTest, WassersteinOttoSymmetricAndQuadratic) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityField rho(random_density(grid, rng));
    const TangentDensity a(random_trig(grid, rng, 4, 1.0));
    const TangentDensity b(random_trig(grid, rng, 4, 1.0));
    const TangentDensity a2(RealField(2.0 * a.values()));
    const double ab = wasserstein_otto_metric(rho, a, b);
    EXPECT_NEAR(ab, wasserstein_otto_metric(rho, b, a), 1e-14);
    const double aa = wasserstein_otto_metric(rho, a, a);
    EXPECT_NEAR(wasserstein_otto_metric(rho, a2, a2), 4.0 * aa, 1e-13 * aa);
  }
}

TEST_F(DensitiesTest, PotentialDerivativeExamples) {
  const DensityField rho(RealField(1.0 + 0.3 * x.sin()));
  PotentialSpec classical;
  classical.add_classical(RealField(x.cos()));
  EXPECT_LE(sup_norm(RealField(potential_derivative(classical, rho) - x.cos())), 0.0);

  PotentialSpec shallow;
  shallow.add_barotropic(EnergyLaw::shallow_water());
  EXPECT_LE(sup_norm(RealField(potential_derivative(shallow, rho) - rho.values())), 1e-16);
  EXPECT_LE(sup_norm(RealField(EnergyLaw::shallow_water().pressure(rho.values()) -
                               0.5 * rho.values().square())),
            1e-16);

  PotentialSpec quantum;
  quantum.add_quantum(4.0);
  EXPECT_LE(sup_norm(potential_derivative(quantum, uniform)), 1e-14);
}

// Directional derivative of U by central differences in the amplitude matches
// int (dU/drho) h for every kind of term.
TEST_F(DensitiesTest, PotentialValueDerivativeConsistency) {
  std::mt19937_64 rng(29);
  std::vector<PotentialSpec> specs(6);
  specs[0].add_classical(RealField((2 * x).cos() + 0.3 * x.sin()));
  specs[1].add_barotropic(EnergyLaw::affine(0.7, 0.2));
  specs[2].add_barotropic(EnergyLaw::power(0.5, 1.4));
  specs[3].add_quantum(4.0);
  specs[4].add_integral(NonlinearityLaw::linear(1.5));
  specs[5].add_integral(NonlinearityLaw::shifted_quadratic(0.8))
      .add_integral(NonlinearityLaw::power(0.4, 2.5))
      .add_classical(RealField(x.sin()), 2.0);
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 5; ++trial) {
      const RealField rho = random_density(grid, rng, 3, 0.4);
      const RealField h = random_trig(grid, rng, 4, 0.3);
      const double step = 1e-4;
      const double up = potential_value(spec, DensityField(RealField(rho + step * h)));
      const double down = potential_value(spec, DensityField(RealField(rho - step * h)));
      const double fd = (up - down) / (2 * step);
      const double exact = integrate(RealField(potential_derivative(spec, DensityField(rho)) * h));
      EXPECT_NEAR(fd, exact, 1e-6 * std::max(std::abs(exact), 1e-3));
    }
  }
}

TEST_F(DensitiesTest, NewtonAccelerationExamples) {
  const auto geodesic = fr_newton_accel(uniform, TangentDensity(RealField(x.cos())), PotentialSpec{});
  EXPECT_NEAR(geodesic.lambda, -0.25, 1e-15);
  EXPECT_LE(sup_norm(RealField(geodesic.rho_ddot - (2 * x).cos() / 4)), 1e-15);

  const DensityField rho(RealField(1.0 + 0.4 * x.cos()));
  const auto rest = fr_newton_accel(rho, TangentDensity(grid.constant(0.0)), PotentialSpec{});
  EXPECT_EQ(rest.lambda, 0.0);
  EXPECT_LE(sup_norm(rest.rho_ddot), 0.0);
}

TEST_F(DensitiesTest, NewtonAccelerationIsMassNeutralAndChartIndependent) {
  std::mt19937_64 rng(31);
  PotentialSpec spec;
  spec.add_quantum(1.0).add_classical(RealField(x.cos())).add_barotropic(EnergyLaw::power(0.3, 2.0));
  for (int trial = 0; trial < 20; ++trial) {
    const DensityField rho(random_density(grid, rng));
    const TangentDensity v(random_trig(grid, rng, 5, 0.5));
    const auto accel = fr_newton_accel(rho, v, spec);
    EXPECT_LE(std::abs(integrate(accel.rho_ddot)), 1e-10);

    const RealField f = rho.values().sqrt();
    const RealField f_dot = v.values() / (2.0 * f);
    const auto sphere = fr_newton_accel_sphere(f, f_dot, spec);
    EXPECT_NEAR(sphere.lambda, accel.lambda, 1e-12);
    EXPECT_LE(sup_norm(RealField(sphere.rho_ddot - accel.rho_ddot)), 1e-11);
  }
}

}  // namespace
}  // namespace geohydro
