#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "caz/experiment.hpp"
#include "caz/statistics.hpp"

using namespace caz;

TEST(Moments, SmallSample) {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 10.0};
  const Moments m = sample_moments(x);
  EXPECT_DOUBLE_EQ(m.mean, 4.0);
  EXPECT_NEAR(m.variance, 12.5, 1e-13);
  EXPECT_NEAR(m.standard_error, std::sqrt(12.5 / 5.0), 1e-13);
  // Central moments 2: 10, 3: 144/5 * ..., computed directly.
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    m2 += std::pow(v - 4.0, 2) / 5;
    m3 += std::pow(v - 4.0, 3) / 5;
    m4 += std::pow(v - 4.0, 4) / 5;
  }
  EXPECT_NEAR(m.skewness, m3 / std::pow(m2, 1.5), 1e-12);
  EXPECT_NEAR(m.excess_kurtosis, m4 / (m2 * m2) - 3.0, 1e-12);
}

TEST(KolmogorovSmirnov, SinglePointAndShift) {
  const std::vector<double> zero = {0.0};
  EXPECT_NEAR(ks_distance_normal(zero), 0.5, 1e-15);
  const std::vector<double> a = {0.0, 1.0, 2.0};
  const std::vector<double> b = {10.0, 11.0};
  EXPECT_DOUBLE_EQ(ks_distance_two_sample(a, b), 1.0);
  EXPECT_DOUBLE_EQ(ks_distance_two_sample(a, a), 0.0);
}

TEST(KolmogorovSmirnov, NormalSampleHasSmallDistance) {
  ComplexGaussianStream s(2, 0);
  std::vector<double> x(20000);
  for (auto& v : x) v = std::sqrt(2.0) * s.next().real();
  EXPECT_LT(ks_distance_normal(x) * std::sqrt(x.size()), 1.95);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  std::atomic<int> ran{0};
  try {
    parallel_for(100, 4, [&](std::size_t i) {
      ++ran;
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST(Parallel, ThreadCapFromEnvironment) {
  setenv("CAZ_THREADS", "3", 1);
  EXPECT_LE(worker_threads(0), 3);
  EXPECT_EQ(worker_threads(5), 3);
  EXPECT_EQ(worker_threads(2), 2);
  unsetenv("CAZ_THREADS");
  EXPECT_GE(worker_threads(0), 1);
}

TEST(Experiment, ZeroSearchPlan) {
  const TestFunction h = TestFunction::bump({0.0, 0.0}, 1.0, 3);
  const ZeroPlan flat = plan_zero_search(ModelSpec(Family::Flat, 100.0), h);
  ASSERT_TRUE(flat.truncation.has_value());
  EXPECT_GT(flat.region.radius, 1.0);
  EXPECT_LE(flat.truncation->tail_bound, 1e-10);
  EXPECT_GT(flat.truncation->radius, flat.region.radius);
  const ZeroPlan elliptic = plan_zero_search(ModelSpec(Family::Elliptic, 20.0), h);
  EXPECT_FALSE(elliptic.truncation.has_value());
}

TEST(Experiment, OverrideHookGivesNormalVerdict) {
  // Exact Gaussian Z with the predicted mean and variance must pass.
  const ModelSpec flat(Family::Flat, 100.0);
  const TestFunction h = TestFunction::bump({0.0, 0.0}, 1.0, 3);
  ExperimentOptions o;
  const double mean = expected_linear_statistic(flat, h);
  const double sd = std::sqrt(variance_prediction(flat, h));
  o.z_override = [&](std::uint64_t t) {
    ComplexGaussianStream s(123, t);
    return mean + sd * std::sqrt(2.0) * s.next().real();
  };
  const ExperimentReport r = run_normality_experiment(flat, h, 2000, 1, o);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.variance_ratio, 1.0, 0.15);
  EXPECT_THROW(run_normality_experiment(flat, h, 50, 1, o), std::invalid_argument);
}

TEST(Experiment, ReportDeterministicAcrossThreadCounts) {
  const ModelSpec flat(Family::Flat, 10.0);
  const TestFunction h = TestFunction::bump({0.0, 0.0}, 1.0, 3);
  ExperimentOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const ExperimentReport a = run_normality_experiment(flat, h, 100, 5, one);
  const ExperimentReport b = run_normality_experiment(flat, h, 100, 5, four);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.trials_csv(), b.trials_csv());
  EXPECT_EQ(a.trials_csv().substr(0, 28), "trial,Z,zero_count,certified");
  EXPECT_EQ(a.to_json()["schema_version"], 1);
}

TEST(Experiment, TrialIsPureFunctionOfSeedAndIndex) {
  const ModelSpec m(Family::Hyperbolic, 4.0);
  const TestFunction h = TestFunction::bump({0.1, 0.0}, 0.5, 3);
  const ZeroPlan plan = plan_zero_search(m, h);
  const TrialResult a = simulate_trial(m, h, plan, 9, 42);
  const TrialResult b = simulate_trial(m, h, plan, 9, 42);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.zero_count, b.zero_count);
  EXPECT_TRUE(a.certified);
}
