#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "caz/zeros.hpp"

using namespace caz;

namespace {

// Winding number of psi around the circle from accumulated phase increments.
int winding_number(const GafSample& s, const Region& r) {
  const int n = 100000;
  double total = 0.0;
  Complex prev = s.evaluate(r.center + r.radius);
  for (int k = 1; k <= n; ++k) {
    const Complex cur = s.evaluate(r.center + std::polar(r.radius, 2.0 * kPi * k / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

bool has_zero(const ZeroSet& s, Complex z, double tol) {
  return std::any_of(s.zeros.begin(), s.zeros.end(), [&](Complex w) { return std::abs(w - z) < tol; });
}

}  // namespace

TEST(Zeros, EllipticClosedForm) {
  // L = 2, factors 1, sqrt 2, 1: zetas (1, 0, 1) give 1 + z^2.
  const ModelSpec m(Family::Elliptic, 2.0);
  const ZeroSet s = find_zeros_elliptic(sample_from_zetas(m, {{1, 0}, {0, 0}, {1, 0}}, std::nullopt));
  EXPECT_EQ(s.count(), 2);
  EXPECT_TRUE(s.certified());
  EXPECT_TRUE(has_zero(s, {0, 1}, 1e-13));
  EXPECT_TRUE(has_zero(s, {0, -1}, 1e-13));
  const ZeroSet t = find_zeros_elliptic(sample_from_zetas(m, {{-0.25, 0}, {0, 0}, {1, 0}}, std::nullopt));
  EXPECT_TRUE(has_zero(t, {0.5, 0}, 1e-13));
  EXPECT_TRUE(has_zero(t, {-0.5, 0}, 1e-13));
  EXPECT_LT(t.residual_max(), 1e-13);
}

TEST(Zeros, DoubleRootMergedWithMultiplicity) {
  // (z - 1/2)^2 = z^2 - z + 1/4.
  const ModelSpec m(Family::Elliptic, 2.0);
  const ZeroSet s =
      find_zeros_elliptic(sample_from_zetas(m, {{0.25, 0}, {-1.0 / std::sqrt(2.0), 0}, {1, 0}}, std::nullopt));
  EXPECT_EQ(s.count(), 2);
  EXPECT_TRUE(s.certified());
}

TEST(Zeros, DegenerateLeadingCoefficient) {
  const ModelSpec m(Family::Elliptic, 2.0);
  EXPECT_THROW(find_zeros_elliptic(sample_from_zetas(m, {{1, 0}, {1, 0}, {0, 0}}, std::nullopt)),
               DegenerateSampleError);
}

TEST(Zeros, EllipticRandomSamplesHaveLZeros) {
  const ModelSpec m(Family::Elliptic, 30.0);
  for (std::uint64_t t = 0; t < 20; ++t) {
    ComplexGaussianStream stream(4, t);
    const ZeroSet s = find_zeros_elliptic(sample_coefficients(m, stream, std::nullopt));
    EXPECT_EQ(s.count(), 30);
    EXPECT_TRUE(s.certified());
    EXPECT_EQ(s.certificate.argument_principle_count, 30);
  }
}

TEST(Zeros, RegionAgreesWithPhaseWinding) {
  const ModelSpec m(Family::Flat, 20.0);
  const Region region = Region::disk({0.1, -0.2}, 0.8);
  const Truncation tr = plan_truncation(m, 1.5, 1e-12);
  for (std::uint64_t t = 0; t < 10; ++t) {
    ComplexGaussianStream stream(8, t);
    const GafSample s = sample_coefficients(m, stream, tr);
    const ZeroSet z = find_zeros_in_region(s, region);
    ASSERT_TRUE(z.certified());
    const int inside = winding_number(s, z.region);
    EXPECT_EQ(z.count(), inside);
    EXPECT_EQ(count_zeros_argument_principle(s, z.region).count, inside);
  }
}

TEST(Zeros, ExpectedCount) {
  EXPECT_NEAR(expected_zero_count(ModelSpec(Family::Flat, 50.0), Region::disk(0.0, 1.0)), 50.0, 1e-12);
  EXPECT_NEAR(expected_zero_count(ModelSpec(Family::Elliptic, 12.0), Region::full_sphere()), 12.0, 1e-12);
  // Elliptic disk of radius R: L R^2 / (1 + R^2).
  EXPECT_NEAR(expected_zero_count(ModelSpec(Family::Elliptic, 12.0), Region::disk(0.0, 2.0)), 12.0 * 4.0 / 5.0, 1e-9);
  // Hyperbolic disk of radius R: L R^2 / (1 - R^2).
  EXPECT_NEAR(expected_zero_count(ModelSpec(Family::Hyperbolic, 3.0), Region::disk(0.0, 0.5)), 1.0, 1e-9);
}

TEST(Zeros, RegionOutsideTruncationRejected) {
  const ModelSpec m(Family::Flat, 5.0);
  ComplexGaussianStream stream(1, 0);
  const GafSample s = sample_coefficients(m, stream, plan_truncation(m, 1.0, 1e-10));
  EXPECT_THROW(find_zeros_in_region(s, Region::disk(0.0, 2.0)), DomainError);
}
