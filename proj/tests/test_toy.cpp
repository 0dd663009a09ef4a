#include <gtest/gtest.h>

#include <cmath>

#include "caz/statistics.hpp"
#include "caz/toy.hpp"
#include "caz/wick.hpp"

using namespace caz;

namespace {

const TestFunction kBump = TestFunction::bump({0.0, 0.0}, 1.0, 3);

}  // namespace

TEST(Toy, LatticeSpacingsGiveIntensityOverPi) {
  // Thinned keeps half of the sites, clusters carry three points per site.
  EXPECT_NEAR(0.5 / std::pow(toy_lattice_spacing(ToyVariant::Thinned), 2), 1.0 / kPi, 1e-15);
  EXPECT_NEAR(1.0 / std::pow(toy_lattice_spacing(ToyVariant::Perturbed), 2), 1.0 / kPi, 1e-15);
  EXPECT_NEAR(3.0 / std::pow(toy_lattice_spacing(ToyVariant::ClusterScattered), 2), 1.0 / kPi, 1e-15);
  EXPECT_EQ(parse_toy_variant("2"), ToyVariant::Perturbed);
  EXPECT_EQ(parse_toy_variant("cluster"), ToyVariant::ClusterScattered);
  EXPECT_THROW(parse_toy_variant("4"), std::invalid_argument);
}

TEST(Toy, ThinnedPredictionMatchesLatticeSum) {
  // Var = (1/4) sum h(s / sqrt L)^2 over lattice sites -> (L / 2 pi) ||h||^2 = L / 14.
  for (double L : {100.0, 400.0}) {
    const ToySpec spec = toy_spec_for(ToyVariant::Thinned, 0.0, L, kBump);
    EXPECT_NEAR(toy_variance_prediction(spec, kBump), L / 14.0, 1e-8 * L);
    EXPECT_NEAR(thinned_variance_lattice_sum(L, kBump) / (L / 14.0), 1.0, 2e-2);
  }
}

TEST(Toy, PredictionsScaleWithL) {
  const ToySpec p100 = toy_spec_for(ToyVariant::Perturbed, 0.3, 100.0, kBump);
  const ToySpec p400 = toy_spec_for(ToyVariant::Perturbed, 0.3, 400.0, kBump);
  EXPECT_NEAR(toy_variance_prediction(p100, kBump), toy_variance_prediction(p400, kBump), 1e-12);
  EXPECT_NEAR(toy_variance_prediction(p100, kBump), 0.09 / (2 * kPi) * 6.0 * kPi / 5.0, 1e-8);
  const ToySpec c100 = toy_spec_for(ToyVariant::ClusterScattered, 0.5, 100.0, kBump);
  const ToySpec c400 = toy_spec_for(ToyVariant::ClusterScattered, 0.5, 400.0, kBump);
  EXPECT_NEAR(toy_variance_prediction(c100, kBump) / toy_variance_prediction(c400, kBump), 4.0, 1e-10);
}

TEST(Toy, MimicScaleMatchesZeroVariance) {
  const double kappa_value = kappa().value;
  const double c = mimic_cluster_scale(kappa_value);
  EXPECT_NEAR(c, 2.0 * std::pow(kPi * kappa_value / 3.0, 0.25), 1e-15);
  const ToySpec spec = toy_spec_for(ToyVariant::ClusterScattered, c, 100.0, kBump);
  EXPECT_NEAR(toy_variance_prediction(spec, kBump), variance_prediction(ModelSpec(Family::Flat, 100.0), kBump), 1e-9);
}

TEST(Toy, SampleMeanIsIntensity) {
  const ToySpec spec = toy_spec_for(ToyVariant::Perturbed, 0.3, 100.0, kBump);
  EXPECT_NEAR(toy_expected_statistic(spec, kBump), 25.0, 1e-8);
  double sum = 0.0;
  const int n = 400;
  for (int t = 0; t < n; ++t) {
    ComplexGaussianStream s(17, static_cast<std::uint64_t>(t));
    sum += toy_linear_statistic(sample_toy(spec, s), kBump, spec.L, spec.window);
  }
  // Var is about 0.054, so the mean has SE ~ 0.012.
  EXPECT_NEAR(sum / n, 25.0, 0.06);
}

TEST(Toy, WindowMustCoverSupport) {
  const ToySpec spec = toy_spec_for(ToyVariant::Thinned, 0.0, 100.0, kBump);
  const std::vector<Complex> none;
  EXPECT_THROW(toy_linear_statistic(none, kBump, 100.0, Region::disk(0.0, 5.0)), std::invalid_argument);
  EXPECT_NO_THROW(toy_linear_statistic(none, kBump, 100.0, spec.window));
}

TEST(Toy, DirectionAverage) {
  // (1/n) sum Q(e^{2 pi i m/n}) - Q(0) = Delta Q / 4 for n >= 3.
  const DirectionAverage radial = direction_average_identity({1, 0, 1, 0, 0, 0}, 4);
  EXPECT_NEAR(radial.lhs, 1.0, 1e-15);
  EXPECT_NEAR(radial.rhs, 1.0, 1e-15);
  const DirectionAverage general = direction_average_identity({0.3, -1.2, 2.0, 0.7, -0.4, 5.0}, 3);
  EXPECT_TRUE(general.holds);
  // n = 2 misses the x y and anisotropic parts.
  const DirectionAverage two = direction_average_identity({1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 2);
  EXPECT_FALSE(two.holds);
  EXPECT_THROW(direction_average_identity({}, 1), std::invalid_argument);
}
