#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "geohydro/grid.hpp"
#include "test_support.hpp"

namespace geohydro {
namespace {

using testing::random_trig;

TEST(PeriodicGrid, RejectsNonPowerOfTwoAndSmallSizes) {
  EXPECT_THROW(PeriodicGrid(48), Error);
  EXPECT_THROW(PeriodicGrid(8), Error);
  EXPECT_NO_THROW(PeriodicGrid(16));
}

TEST(PeriodicGrid, NodesAreEquispacedFromZero) {
  PeriodicGrid grid(32);
  const RealField x = grid.nodes();
  EXPECT_EQ(x[0], 0.0);
  for (Eigen::Index j = 1; j < x.size(); ++j) {
    EXPECT_NEAR(x[j] - x[j - 1], kTwoPi / 32, 1e-15);
  }
  EXPECT_LT(x[31], kTwoPi);
}

TEST(Integrate, ConstantsAndTrig) {
  PeriodicGrid grid(64);
  const RealField x = grid.nodes();
  EXPECT_NEAR(integrate(grid.constant(3.25)), 3.25, 1e-15);
  EXPECT_NEAR(integrate(grid.constant(1.0)), 1.0, 1e-15);
  EXPECT_NEAR(integrate(RealField(x.sin().square())), 0.5, 1e-15);
  EXPECT_NEAR(integrate(RealField(x.cos())), 0.0, 1e-15);
}

TEST(SpectralDerivative, TrigPolynomials) {
  PeriodicGrid grid(64);
  const RealField x = grid.nodes();
  EXPECT_LE(sup_norm(RealField(spectral_derivative(RealField(x.sin()), 1) - x.cos())), 1e-12);
  EXPECT_LE(sup_norm(RealField(spectral_derivative(RealField(x.sin()), 2) + x.sin())), 1e-12);
  EXPECT_LE(sup_norm(spectral_derivative(grid.constant(1.0), 1)), 1e-15);
}

TEST(SpectralDerivative, OddOrderDropsNyquist) {
  PeriodicGrid grid(16);
  // cos(8x) on 16 nodes is the Nyquist mode (-1)^j
  const RealField nyquist = grid.sample([](double x) { return std::cos(8.0 * x); });
  EXPECT_LE(sup_norm(spectral_derivative(nyquist, 1)), 1e-13);
  EXPECT_LE(sup_norm(RealField(spectral_derivative(nyquist, 2) + 64.0 * nyquist)), 1e-11);
}

TEST(SpectralDerivative, ComplexField) {
  PeriodicGrid grid(32);
  const ComplexField plane = grid.sample([](double x) { return std::exp(complex(0, 3 * x)); });
  const ComplexField d = spectral_derivative(plane, 1);
  EXPECT_LE(sup_norm(ComplexField(d - complex(0, 3) * plane)), 1e-12);
  EXPECT_THROW(spectral_derivative(plane, 0), Error);
}

TEST(Antiderivative, Examples) {
  PeriodicGrid grid(64);
  const RealField x = grid.nodes();
  EXPECT_LE(sup_norm(RealField(antiderivative(RealField(x.cos())) - x.sin())), 1e-13);
  EXPECT_LE(sup_norm(antiderivative(grid.constant(0.0))), 0.0);
  EXPECT_LE(sup_norm(RealField(antiderivative(RealField((2 * x).sin())) + (2 * x).cos() / 2)),
            1e-13);
}

TEST(Antiderivative, RejectsNonZeroMean) {
  PeriodicGrid grid(32);
  try {
    antiderivative(grid.constant(1e-6));
    FAIL() << "expected NonZeroMean";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonZeroMean);
  }
}

TEST(InvertInertia, Examples) {
  PeriodicGrid grid(64);
  const RealField x = grid.nodes();
  EXPECT_LE(sup_norm(RealField(invert_inertia(grid.constant(2.5)) - 2.5)), 1e-14);
  EXPECT_LE(sup_norm(RealField(invert_inertia(RealField((2 * x).cos())) - (2 * x).cos() / 4)),
            1e-14);
  const RealField m = x.cos() + 1.0;
  EXPECT_LE(sup_norm(RealField(invert_inertia(m) - m)), 1e-14);
}

TEST(WeightedPoisson, Examples) {
  PeriodicGrid grid(64);
  const RealField x = grid.nodes();
  const RealField one = grid.constant(1.0);
  EXPECT_LE(sup_norm(RealField(solve_weighted_poisson(one, RealField(x.cos())) + x.cos())), 1e-13);
  EXPECT_LE(sup_norm(RealField(solve_weighted_poisson(one, RealField((2 * x).sin())) +
                               (2 * x).sin() / 4)),
            1e-13);
  const RealField rho = 1.0 + 0.5 * x.cos();
  EXPECT_LE(sup_norm(solve_weighted_poisson(rho, grid.constant(0.0))), 1e-15);
}

TEST(WeightedPoisson, ErrorPaths) {
  PeriodicGrid grid(32);
  const RealField x = grid.nodes();
  try {
    solve_weighted_poisson(RealField(x.cos()), RealField(x.sin()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveDensity);
  }
  try {
    solve_weighted_poisson(grid.constant(1.0), grid.constant(0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonZeroMean);
  }
}

// Property: derivative / antiderivative round trip, integration by parts,
// Poisson residual, inertia inverse, across random band-limited inputs.
TEST(GridProperties, RandomBandLimitedFields) {
  std::mt19937_64 rng(20240601);
  PeriodicGrid grid(128);
  for (int trial = 0; trial < 50; ++trial) {
    const RealField g = random_trig(grid, rng, 12, 1.0, 0.7);
    const RealField round_trip = antiderivative(spectral_derivative(g, 1));
    EXPECT_LE(sup_norm(RealField(round_trip - (g - integrate(g)))), 1e-12);
    EXPECT_LE(std::abs(integrate(spectral_derivative(g, 1))), 1e-15);

    // k^2 amplification of round-off is ~n^2 eps, so this part runs at n = 64
    const RealField u = random_trig(PeriodicGrid(64), rng, 10, 1.0, 0.3);
    EXPECT_LE(sup_norm(RealField(invert_inertia(apply_inertia(u)) - u)), 1e-12);
    EXPECT_LE(sup_norm(RealField(apply_inertia(invert_inertia(u)) - u)), 1e-12);

    const RealField rho = testing::random_density(grid, rng, 3, 0.4);
    const RealField rhs = random_trig(grid, rng, 6, 1.0);
    const RealField theta = solve_weighted_poisson(rho, rhs);
    const RealField residual =
        spectral_derivative(RealField(rho * spectral_derivative(theta))) - rhs;
    EXPECT_LE(sup_norm(residual), 1e-10 * sup_norm(rhs));
    EXPECT_LE(std::abs(integrate(theta)), 1e-14);
  }
}

TEST(TrigInterpolant, MatchesSeriesOffGrid) {
  PeriodicGrid grid(32);
  const auto fn = [](double x) { return 0.3 + std::sin(2 * x) - 0.25 * std::cos(5 * x); };
  const auto dfn = [](double x) { return 2 * std::cos(2 * x) + 1.25 * std::sin(5 * x); };
  TrigInterpolant interp(grid.sample(fn));
  for (double x : {0.1, 1.234, 3.0, 5.9, 7.5}) {
    EXPECT_NEAR(interp.value(x).real(), fn(x), 1e-13);
    EXPECT_NEAR(interp.value(x).imag(), 0.0, 1e-13);
    EXPECT_NEAR(interp.derivative(x).real(), dfn(x), 1e-12);
  }
}

TEST(InvertCircleMap, RecoversPreimage) {
  const auto phi = [](double x) { return x + 0.3 * std::sin(x); };
  const auto dphi = [](double x) { return 1 + 0.3 * std::cos(x); };
  for (double y : {0.0, 0.5, 2.0, 4.0, 6.2}) {
    const double x = invert_circle_map(phi, dphi, y);
    EXPECT_NEAR(phi(x), y, 1e-14);
  }
}

}  // namespace
}  // namespace geohydro
