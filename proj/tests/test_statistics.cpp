#include <gtest/gtest.h>

#include <cmath>

#include "caz/rng.hpp"
#include "caz/statistics.hpp"
#include "caz/wick.hpp"

using namespace caz;

namespace {

const TestFunction kBump = TestFunction::bump({0.0, 0.0}, 1.0, 3);
const TestFunction kSmall = TestFunction::bump({0.0, 0.0}, 0.5, 3);

}  // namespace

TEST(Statistics, InvariantLaplacian) {
  const ModelSpec elliptic(Family::Elliptic, 5.0);
  // s = 1 at the origin of the sphere chart.
  EXPECT_NEAR(invariant_laplacian(kBump, elliptic, 0.0), -12.0, 1e-13);
  const Complex z{0.3, 0.2};
  const double s = 1.0 + std::norm(z);
  EXPECT_NEAR(invariant_laplacian(kBump, elliptic, z), s * s * kBump.laplacian(z), 1e-13);
  const ModelSpec hyper(Family::Hyperbolic, 2.0);
  const double t = 1.0 - std::norm(z);
  EXPECT_NEAR(invariant_laplacian(kSmall, hyper, z), t * t * kSmall.laplacian(z), 1e-13);
}

TEST(Statistics, FlatClosedForms) {
  // For (1 - |z|^2)^3: int h = pi / 4, ||h||^2 = pi / 7, ||Delta h||^2 = 96 pi / 5.
  const ModelSpec flat(Family::Flat, 100.0);
  EXPECT_NEAR(expected_linear_statistic(flat, kBump), 25.0, 1e-9);
  EXPECT_NEAR(l2_norm_squared(kBump), kPi / 7.0, 1e-9);
  EXPECT_NEAR(laplacian_norm_squared(flat, kBump), 96.0 * kPi / 5.0, 1e-7);
  EXPECT_NEAR(euclidean_laplacian_norm_squared(kBump), 96.0 * kPi / 5.0, 1e-7);
  EXPECT_NEAR(variance_prediction(flat, kBump), kappa().value / 100.0 * 96.0 * kPi / 5.0, 1e-9);
  // ||grad h||^2 = pi int_0^1 36 s (1 - s)^4 ds = 6 pi / 5.
  EXPECT_NEAR(gradient_norm_squared(kBump), 6.0 * kPi / 5.0, 1e-8);
}

TEST(Statistics, InvariantQuantitiesUnderSymmetry) {
  // Elliptic: moving the bump by a rotation of the sphere leaves int h dm* and
  // ||Delta* h||^2 unchanged; use rotation about the axis through 0 and infinity.
  const ModelSpec elliptic(Family::Elliptic, 10.0);
  const TestFunction h = TestFunction::bump({0.4, 0.0}, 0.5, 3);
  const TestFunction r = TestFunction::bump({0.0, 0.4}, 0.5, 3);
  EXPECT_NEAR(expected_linear_statistic(elliptic, h), expected_linear_statistic(elliptic, r), 1e-9);
  EXPECT_NEAR(laplacian_norm_squared(elliptic, h), laplacian_norm_squared(elliptic, r), 1e-7);
  // Flat: translation invariance.
  const ModelSpec flat(Family::Flat, 3.0);
  EXPECT_NEAR(laplacian_norm_squared(flat, kBump), laplacian_norm_squared(flat, kBump.shifted({2.0, -1.0})), 1e-7);
}

TEST(Statistics, IntegrateInvariantSphereMass) {
  const ModelSpec elliptic(Family::Elliptic, 2.0);
  EXPECT_NEAR(integrate_invariant(elliptic, [](Complex) { return 1.0; }, TestFunction::tabulated_whole_sphere(
                                                                            [](Complex) { return 1.0; })),
              kPi, 1e-10);
}

TEST(Statistics, SupportMustFitDomain) {
  EXPECT_THROW(require_support_in_domain(ModelSpec(Family::Hyperbolic, 2.0), kBump), DomainError);
  EXPECT_NO_THROW(require_support_in_domain(ModelSpec(Family::Hyperbolic, 2.0), kSmall));
}

TEST(Statistics, LogCovarianceSeries) {
  // sum c^2 x^a -> Var log|zeta| as x -> 1; small x: c_2^2 x = x / 4.
  EXPECT_NEAR(log_covariance_series(1e-4), 0.25e-4 + 0.0625e-8, 1e-12);
  EXPECT_NEAR(log_covariance_series(0.5), [] {
    const auto c = wick_log_coeffs(200);
    double s = 0.0;
    for (int a = 1; a <= 200; ++a) s += c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)] * std::pow(0.5, a);
    return s;
  }(), 1e-10);
  // Closed form from the coefficient pattern: Li2(x) / 4.
  EXPECT_NEAR(log_covariance_series(0.999999), kPi * kPi / 24.0, 1e-4);
}

TEST(Statistics, ExactVarianceSeriesApproachesPrediction) {
  const ModelSpec flat(Family::Flat, 100.0);
  const double exact = exact_variance_series(flat, kBump, 16, 32);
  const double predicted = variance_prediction(flat, kBump);
  EXPECT_GT(exact / predicted, 0.9);
  EXPECT_LT(exact / predicted, 1.0);
  // The finite-L correction shrinks as L grows.
  const ModelSpec small(Family::Flat, 20.0);
  const double ratio_small = exact_variance_series(small, kBump, 16, 32) / variance_prediction(small, kBump);
  EXPECT_LT(ratio_small, exact / predicted);
}
