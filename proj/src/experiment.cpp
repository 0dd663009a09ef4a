#include "caz/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "caz/quadrature.hpp"
#include "caz/statistics.hpp"

namespace caz {

namespace {

double domain_gap(const ModelSpec& model, Complex center, double radius) {
  if (model.family() != Family::Hyperbolic) return std::numeric_limits<double>::infinity();
  const double gap = 1.0 - std::abs(center) - radius;
  if (!(gap > 0.0)) throw DomainError("region must lie inside the unit disk");
  return gap;
}

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

ZeroPlan plan_zero_search(const ModelSpec& model, const TestFunction& h, double tol) {
  if (model.family() == Family::Elliptic) return ZeroPlan{Region::full_sphere(), std::nullopt};
  if (h.whole_sphere()) throw DomainError("whole-sphere test functions need the elliptic model");
  const double margin = std::min(1e-3 * h.radius(), domain_gap(model, h.center(), h.radius()) / 3.0);
  const Region region = Region::disk(h.center(), h.radius() + margin);
  return ZeroPlan{region, plan_truncation(model, std::abs(h.center()) + h.radius() + 2.0 * margin, tol)};
}

ZeroPlan plan_zero_search(const ModelSpec& model, const Region& region, double tol) {
  if (region.kind == RegionKind::FullSphere) {
    if (model.family() != Family::Elliptic) throw DomainError("full-sphere region needs the elliptic model");
    return ZeroPlan{region, std::nullopt};
  }
  if (model.family() == Family::Elliptic) return ZeroPlan{region, std::nullopt};
  const double margin = std::min(1e-3 * region.radius, domain_gap(model, region.center, region.radius) / 2.0);
  return ZeroPlan{region, plan_truncation(model, std::abs(region.center) + region.radius + margin, tol)};
}

TrialFailure::TrialFailure(std::uint64_t trial, const std::string& what)
    : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}

namespace {

ZeroSet locate(const ModelSpec& model, const ZeroPlan& plan, std::uint64_t seed, std::uint64_t trial) {
  ComplexGaussianStream stream(seed, trial);
  const GafSample sample = sample_coefficients(model, stream, plan.truncation);
  try {
    return find_zeros_in_region(sample, plan.region);
  } catch (const CertificateError& e) {
    throw TrialFailure(trial, e.what());
  } catch (const ConvergenceError& e) {
    throw TrialFailure(trial, e.what());
  } catch (const DegenerateSampleError& e) {
    throw TrialFailure(trial, e.what());
  }
}

}  // namespace

TrialResult simulate_trial(const ModelSpec& model, const TestFunction& h, const ZeroPlan& plan,
                           std::uint64_t seed, std::uint64_t trial) {
  const ZeroSet zeros = locate(model, plan, seed, trial);
  return TrialResult{trial, linear_statistic(zeros, h), zeros.count(), zeros.certified()};
}

Moments sample_moments(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("sample_moments needs at least two values");
  CompensatedSum s1;
  for (double v : values) s1.add(v);
  const double mean = s1.value() / n;
  CompensatedSum s2;
  CompensatedSum s3;
  CompensatedSum s4;
  for (double v : values) {
    const double d = v - mean;
    s2.add(d * d);
    s3.add(d * d * d);
    s4.add(d * d * d * d);
  }
  const double m2 = s2.value() / n;
  Moments m;
  m.mean = mean;
  m.variance = s2.value() / (n - 1);
  m.skewness = m2 > 0.0 ? s3.value() / n / std::pow(m2, 1.5) : 0.0;
  m.excess_kurtosis = m2 > 0.0 ? s4.value() / n / (m2 * m2) - 3.0 : 0.0;
  m.standard_error = std::sqrt(m.variance / n);
  return m;
}

double ks_distance_normal(std::span<const double> values) {
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-x[i] / std::sqrt(2.0));
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  return d;
}

double ks_distance_two_sample(std::span<const double> a, std::span<const double> b) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

int worker_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CAZ_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::max(1, threads);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> ExperimentReport::z_values() const {
  std::vector<double> z;
  z.reserve(results.size());
  for (const auto& r : results) z.push_back(r.z);
  return z;
}

nlohmann::json ExperimentReport::to_json() const {
  return {{"schema_version", 1},
          {"kind", "normality"},
          {"family", family},
          {"L", L},
          {"h", h},
          {"trials", trials},
          {"seed", seed},
          {"empirical",
           {{"mean", moments.mean},
            {"variance", moments.variance},
            {"skewness", moments.skewness},
            {"excess_kurtosis", moments.excess_kurtosis},
            {"standard_error", moments.standard_error}}},
          {"predicted", {{"mean", predicted_mean}, {"variance", predicted_variance}}},
          {"variance_ratio", variance_ratio},
          {"standardization", standardization == Standardization::Theoretical ? "theoretical" : "empirical"},
          {"normality",
           {{"ks_distance", ks_distance},
            {"ks_scaled", ks_scaled},
            {"ks_threshold", ks_threshold},
            {"skewness_bound", skewness_bound},
            {"verdict", verdict ? "pass" : "fail"}}},
          {"config", config}};
}

std::string ExperimentReport::trials_csv() const {
  std::string out = "trial,Z,zero_count,certified\n";
  for (const auto& r : results) {
    out += std::to_string(r.trial) + "," + format_double(r.z) + "," + std::to_string(r.zero_count) + "," +
           (r.certified ? "true" : "false") + "\n";
  }
  return out;
}

ExperimentReport run_normality_experiment(const ModelSpec& model, const TestFunction& h, int trials,
                                          std::uint64_t seed, const ExperimentOptions& options) {
  if (trials < 100) throw std::invalid_argument("normality experiment needs at least 100 trials");
  ExperimentReport report;
  report.family = std::string(to_string(model.family()));
  report.L = model.intensity();
  report.h = h.to_json();
  report.trials = trials;
  report.seed = seed;
  report.config = options.config;
  report.standardization = options.standardization;
  report.ks_threshold = options.ks_threshold;
  report.predicted_mean = expected_linear_statistic(model, h);
  report.predicted_variance = variance_prediction(model, h);

  report.results.resize(static_cast<std::size_t>(trials));
  if (options.z_override) {
    for (int t = 0; t < trials; ++t) {
      report.results[static_cast<std::size_t>(t)] =
          TrialResult{static_cast<std::uint64_t>(t), options.z_override(static_cast<std::uint64_t>(t)), 0, true};
    }
  } else {
    const ZeroPlan plan = plan_zero_search(model, h, options.truncation_tol);
    parallel_for(static_cast<std::size_t>(trials), worker_threads(options.threads), [&](std::size_t t) {
      report.results[t] = simulate_trial(model, h, plan, seed, t);
    });
  }

  const std::vector<double> z = report.z_values();
  report.moments = sample_moments(z);
  report.variance_ratio = report.moments.variance / report.predicted_variance;
  double center = report.predicted_mean;
  double scale = std::sqrt(report.predicted_variance);
  if (options.standardization == Standardization::Empirical) {
    center = report.moments.mean;
    scale = std::sqrt(report.moments.variance);
  }
  std::vector<double> standardized(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) standardized[i] = (z[i] - center) / scale;
  report.ks_distance = ks_distance_normal(standardized);
  report.ks_scaled = report.ks_distance * std::sqrt(static_cast<double>(trials));
  report.skewness_bound = 4.0 * std::sqrt(6.0 / trials);
  report.verdict = report.ks_scaled < report.ks_threshold;
  return report;
}

CountExperiment run_count_experiment(const ModelSpec& model, const Region& region, int trials,
                                     std::uint64_t seed, const ExperimentOptions& options) {
  if (trials < 2) throw std::invalid_argument("count experiment needs at least two trials");
  const ZeroPlan plan = plan_zero_search(model, region, options.truncation_tol);
  CountExperiment out;
  out.counts.resize(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), worker_threads(options.threads), [&](std::size_t t) {
    out.counts[t] = locate(model, plan, seed, t).count();
  });
  std::vector<double> values(out.counts.begin(), out.counts.end());
  out.moments = sample_moments(values);
  out.expected = expected_zero_count(model, region);
  return out;
}

}  // namespace caz
