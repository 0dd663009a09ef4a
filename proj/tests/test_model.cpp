#include <gtest/gtest.h>

#include <cmath>

#include "caz/model.hpp"
#include "caz/rng.hpp"

using namespace caz;

namespace {

double factor_by_product(const ModelSpec& m, int k) {
  double f = 1.0;
  for (int j = 0; j < k; ++j) {
    const double L = m.intensity();
    switch (m.family()) {
      case Family::Elliptic:
        f *= (L - j) / (j + 1);
        break;
      case Family::Flat:
        f *= L / (j + 1);
        break;
      case Family::Hyperbolic:
        f *= (L + j) / (j + 1);
        break;
    }
  }
  return std::sqrt(f);
}

const ModelSpec kModels[] = {ModelSpec(Family::Elliptic, 6.0), ModelSpec(Family::Flat, 2.5),
                             ModelSpec(Family::Hyperbolic, 1.5)};

}  // namespace

TEST(Model, RejectsBadIntensity) {
  EXPECT_THROW(ModelSpec(Family::Elliptic, 2.5), std::invalid_argument);
  EXPECT_THROW(ModelSpec(Family::Flat, 0.0), std::invalid_argument);
  EXPECT_EQ(parse_family("hyperbolic"), Family::Hyperbolic);
  EXPECT_THROW(parse_family("torus"), std::invalid_argument);
}

TEST(Model, CoefficientFactors) {
  for (const auto& m : kModels) {
    for (int k = 0; k <= 6; ++k) EXPECT_NEAR(coefficient_factor(m, k), factor_by_product(m, k), 1e-12 * factor_by_product(m, k));
  }
  EXPECT_EQ(coefficient_factor(ModelSpec(Family::Elliptic, 6.0), 7), 0.0);
}

TEST(Model, NormPsiMatchesSeries) {
  const Complex z{0.3, -0.4};
  for (const auto& m : kModels) {
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) sum += std::pow(factor_by_product(m, k), 2) * std::pow(std::abs(z), 2 * k);
    EXPECT_NEAR(norm_psi(m, z), std::sqrt(sum), 1e-12 * std::sqrt(sum));
  }
}

TEST(Model, RhoProperties) {
  ComplexGaussianStream s(5, 0);
  for (const auto& m : kModels) {
    for (int i = 0; i < 20; ++i) {
      const Complex a = 0.4 * s.next(), b = 0.4 * s.next();
      if (m.family() == Family::Hyperbolic && (std::abs(a) >= 0.95 || std::abs(b) >= 0.95)) continue;
      EXPECT_NEAR(std::abs(rho(m, a, a) - 1.0), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(rho(m, a, b)), abs_rho(m, a, b), 1e-13);
      EXPECT_LE(abs_rho(m, a, b), 1.0 + 1e-15);
      EXPECT_NEAR(one_minus_abs_rho(m, a, b), 1.0 - abs_rho(m, a, b), 1e-13);
    }
  }
}

TEST(Model, OneMinusAbsRhoStableForNearbyPoints) {
  // Flat: 1 - |rho| = 1 - exp(-L |d|^2 / 2) ~ L |d|^2 / 2.
  const ModelSpec flat(Family::Flat, 1.0);
  const double d = 1e-7;
  EXPECT_NEAR(one_minus_abs_rho(flat, {0.2, 0.1}, {0.2 + d, 0.1}), 0.5 * d * d, 1e-6 * 0.5 * d * d);
}

TEST(Model, SymmetryInvariance) {
  // |rho| is invariant under the group; the phase multiplier carries the rest.
  const std::pair<ModelSpec, GroupElement> cases[] = {
      {ModelSpec(Family::Elliptic, 4.0), {Complex(0.6, 0.0), Complex(0.0, 0.8)}},
      {ModelSpec(Family::Flat, 3.0), {std::polar(1.0, 0.7), Complex(0.5, -0.2)}},
      {ModelSpec(Family::Hyperbolic, 2.0), {Complex(std::sqrt(1.25), 0.0), Complex(0.3, 0.4)}}};
  for (const auto& [m, g] : cases) {
    validate_group_element(m, g);
    const Complex a{0.1, 0.2}, b{-0.3, 0.25};
    EXPECT_NEAR(abs_rho(m, apply(m, g, a), apply(m, g, b)), abs_rho(m, a, b), 1e-13);
    const Complex ua = phase_multiplier(m, g, a), ub = phase_multiplier(m, g, b);
    EXPECT_NEAR(std::abs(ua), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(rho(m, apply(m, g, a), apply(m, g, b)) - ua * std::conj(ub) * rho(m, a, b)), 0.0, 1e-12);
  }
  EXPECT_THROW(validate_group_element(ModelSpec(Family::Flat, 1.0), {Complex(2.0, 0.0), 0.0}), std::invalid_argument);
}

TEST(Model, ConformalScale) {
  EXPECT_DOUBLE_EQ(conformal_scale(ModelSpec(Family::Elliptic, 2.0), {1.0, 1.0}), 3.0);
  EXPECT_DOUBLE_EQ(conformal_scale(ModelSpec(Family::Flat, 2.0), {1.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(conformal_scale(ModelSpec(Family::Hyperbolic, 2.0), {0.5, 0.0}), 0.75);
  EXPECT_DOUBLE_EQ(invariant_measure_density(ModelSpec(Family::Hyperbolic, 2.0), {0.5, 0.0}), 1.0 / 0.5625);
}
