#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "caz/gaf.hpp"
#include "caz/test_function.hpp"
#include "caz/zeros.hpp"

namespace caz {

/// Region and truncation used to locate the zeroes relevant to h.
struct ZeroPlan {
  Region region;
  std::optional<Truncation> truncation;  // empty for elliptic (exact) samples
};

/// Region slightly larger than the support of h (the whole sphere for
/// elliptic), truncation certified to `tol` on a radius beyond the region.
ZeroPlan plan_zero_search(const ModelSpec& model, const TestFunction& h, double tol = 1e-10);
/// Same for a given disk region.
ZeroPlan plan_zero_search(const ModelSpec& model, const Region& region, double tol = 1e-10);

struct TrialResult {
  std::uint64_t trial = 0;
  double z = 0.0;
  int zero_count = 0;
  bool certified = false;
};

/// One trial: sample on stream (seed, trial), locate zeroes, sum h.
TrialResult simulate_trial(const ModelSpec& model, const TestFunction& h, const ZeroPlan& plan,
                           std::uint64_t seed, std::uint64_t trial);

/// Raised when a trial cannot be certified; carries the trial index.
class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(std::uint64_t trial, const std::string& what);
  std::uint64_t trial() const { return trial_; }

 private:
  std::uint64_t trial_;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double standard_error = 0.0;  // of the mean
};
/// Moments with compensated sums in index order.
Moments sample_moments(std::span<const double> values);

/// Kolmogorov-Smirnov distance of the sample to N(0, 1).
double ks_distance_normal(std::span<const double> values);
/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::span<const double> a, std::span<const double> b);

/// Number of worker threads: CAZ_THREADS if set (>= 1), else the hardware count.
int worker_threads(int requested = 0);

/// Runs body(i) for i in [0, count) on `threads` workers. The first failure
/// by index is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

enum class Standardization { Theoretical, Empirical };

struct ExperimentOptions {
  int threads = 0;
  double truncation_tol = 1e-10;
  /// Theoretical (acceptance) or empirical (diagnostics only).
  Standardization standardization = Standardization::Theoretical;
  double ks_threshold = 1.95;
  /// Test hook: replaces the simulated Z of each trial.
  std::function<double(std::uint64_t trial)> z_override;
  /// Optional effective configuration echoed into the report.
  nlohmann::json config;
};

struct ExperimentReport {
  std::string family;
  double L = 0.0;
  nlohmann::json h;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialResult> results;
  Moments moments;
  double predicted_mean = 0.0;
  double predicted_variance = 0.0;
  double variance_ratio = 0.0;
  Standardization standardization = Standardization::Theoretical;
  double ks_distance = 0.0;
  double ks_scaled = 0.0;  // D * sqrt(M)
  double ks_threshold = 1.95;
  double skewness_bound = 0.0;  // 4 sqrt(6 / M)
  bool verdict = false;         // ks_scaled < ks_threshold
  nlohmann::json config;

  std::vector<double> z_values() const;
  nlohmann::json to_json() const;
  /// trial,Z,zero_count,certified
  std::string trials_csv() const;
};

/// Monte Carlo normality experiment for the linear statistic. Trials use
/// streams (seed, trial) and are standardized by the predicted mean and
/// variance. Throws std::invalid_argument for trials < 100.
ExperimentReport run_normality_experiment(const ModelSpec& model, const TestFunction& h, int trials,
                                          std::uint64_t seed, const ExperimentOptions& options = {});

struct CountExperiment {
  std::vector<int> counts;
  Moments moments;
  double expected = 0.0;
};
/// Certified zero counts in a disk over independent trials.
CountExperiment run_count_experiment(const ModelSpec& model, const Region& region, int trials,
                                     std::uint64_t seed, const ExperimentOptions& options = {});

}  // namespace caz
