#include "caz/toy.hpp"

#include <cmath>

#include "caz/quadrature.hpp"
#include "caz/statistics.hpp"

namespace caz {

std::string_view to_string(ToyVariant variant) {
  switch (variant) {
    case ToyVariant::Thinned:
      return "thinned";
    case ToyVariant::Perturbed:
      return "perturbed";
    case ToyVariant::ClusterScattered:
      return "cluster";
  }
  return "unknown";
}

ToyVariant parse_toy_variant(std::string_view text) {
  if (text == "1" || text == "thinned") return ToyVariant::Thinned;
  if (text == "2" || text == "perturbed") return ToyVariant::Perturbed;
  if (text == "3" || text == "cluster") return ToyVariant::ClusterScattered;
  throw std::invalid_argument("unknown toy variant '" + std::string(text) + "'");
}

double toy_lattice_spacing(ToyVariant variant) {
  switch (variant) {
    case ToyVariant::Thinned:
      return std::sqrt(kPi / 2.0);
    case ToyVariant::Perturbed:
      return std::sqrt(kPi);
    case ToyVariant::ClusterScattered:
      return std::sqrt(3.0 * kPi);
  }
  return 0.0;
}

ToySpec toy_spec_for(ToyVariant variant, double c, double L, const TestFunction& h) {
  if (!(L > 0.0)) throw std::invalid_argument("toy model needs L > 0");
  if (h.whole_sphere()) throw std::invalid_argument("toy models need a compactly supported h");
  const double s = std::sqrt(L);
  return ToySpec{variant, c, L, Region::disk(s * h.center(), s * h.radius())};
}

std::vector<Complex> sample_toy(const ToySpec& spec, ComplexGaussianStream& stream) {
  if (spec.c < 0.0) throw std::invalid_argument("toy scatter scale must be non-negative");
  if (spec.window.kind != RegionKind::Disk) throw std::invalid_argument("toy window must be a disk");
  const double a = toy_lattice_spacing(spec.variant);
  const double scatter = spec.variant == ToyVariant::Thinned ? 0.0 : spec.c;
  const double reach = spec.window.radius + 6.0 * scatter + a * std::sqrt(2.0);
  const Complex w = spec.window.center;
  const long k0 = static_cast<long>(std::floor((w.real() - reach) / a));
  const long k1 = static_cast<long>(std::ceil((w.real() + reach) / a));
  const long l0 = static_cast<long>(std::floor((w.imag() - reach) / a));
  const long l1 = static_cast<long>(std::ceil((w.imag() + reach) / a));
  const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
  std::vector<Complex> points;
  for (long k = k0; k <= k1; ++k) {
    for (long l = l0; l <= l1; ++l) {
      const Complex site = a * Complex(static_cast<double>(k), static_cast<double>(l));
      if (std::abs(site - w) > reach) continue;
      switch (spec.variant) {
        case ToyVariant::Thinned:
          if (stream.uniform() < 0.5) points.push_back(site);
          break;
        case ToyVariant::Perturbed:
          points.push_back(site + spec.c * stream.next());
          break;
        case ToyVariant::ClusterScattered: {
          const Complex eta = stream.next();
          Complex direction = 1.0;
          for (int m = 0; m < 3; ++m, direction *= omega) points.push_back(site + spec.c * direction * eta);
          break;
        }
      }
    }
  }
  return points;
}

double toy_linear_statistic(std::span<const Complex> points, const TestFunction& h, double L, const Region& window) {
  const double s = std::sqrt(L);
  if (h.whole_sphere() ||
      std::abs(s * h.center() - window.center) + s * h.radius() > window.radius * (1.0 + 1e-12)) {
    throw std::invalid_argument("toy statistic: scaled support of h is not covered by the window");
  }
  CompensatedSum sum;
  for (Complex z : points) sum.add(h.value(z / s));
  return sum.value();
}

double toy_expected_statistic(const ToySpec& spec, const TestFunction& h) {
  return spec.L / kPi * integrate_disk([&](Complex z) { return h.value(z); }, h.center(), h.radius()).value;
}

double toy_variance_prediction(const ToySpec& spec, const TestFunction& h) {
  switch (spec.variant) {
    case ToyVariant::Thinned:
      return spec.L / (2.0 * kPi) * l2_norm_squared(h);
    case ToyVariant::Perturbed:
      return spec.c * spec.c / (2.0 * kPi) * gradient_norm_squared(h);
    case ToyVariant::ClusterScattered:
      return 3.0 * std::pow(spec.c, 4) / (16.0 * kPi * spec.L) * euclidean_laplacian_norm_squared(h);
  }
  return 0.0;
}

double thinned_variance_lattice_sum(double L, const TestFunction& h) {
  const double a = toy_lattice_spacing(ToyVariant::Thinned);
  const double s = std::sqrt(L);
  const Complex c = s * h.center();
  const double reach = s * h.radius();
  CompensatedSum sum;
  for (long k = static_cast<long>(std::floor((c.real() - reach) / a)); k * a <= c.real() + reach; ++k) {
    for (long l = static_cast<long>(std::floor((c.imag() - reach) / a)); l * a <= c.imag() + reach; ++l) {
      const double v = h.value(a * Complex(static_cast<double>(k), static_cast<double>(l)) / s);
      sum.add(0.25 * v * v);
    }
  }
  return sum.value();
}

double mimic_cluster_scale(double kappa) { return 2.0 * std::pow(kPi * kappa / 3.0, 0.25); }

ToyExperiment run_toy_experiment(const ToySpec& spec, const TestFunction& h, int trials, std::uint64_t seed,
                                 int threads) {
  if (trials < 2) throw std::invalid_argument("toy experiment needs at least two trials");
  ToyExperiment out;
  out.z.resize(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), worker_threads(threads), [&](std::size_t t) {
    ComplexGaussianStream stream(seed, t);
    const std::vector<Complex> points = sample_toy(spec, stream);
    out.z[t] = toy_linear_statistic(points, h, spec.L, spec.window);
  });
  out.moments = sample_moments(out.z);
  out.predicted_mean = toy_expected_statistic(spec, h);
  out.predicted_variance = toy_variance_prediction(spec, h);
  return out;
}

double QuadraticForm::operator()(Complex z) const {
  const double x = z.real();
  const double y = z.imag();
  return a * x * x + b * x * y + c * y * y + d * x + e * y + f;
}

DirectionAverage direction_average_identity(const QuadraticForm& q, int n) {
  if (n < 2) throw std::invalid_argument("direction average needs n >= 2");
  CompensatedSum sum;
  for (int m = 0; m < n; ++m) sum.add(q(std::polar(1.0, 2.0 * kPi * m / n)) - q(0.0));
  DirectionAverage r;
  r.lhs = sum.value() / n;
  r.rhs = 0.25 * q.laplacian();
  r.defect = r.lhs - r.rhs;
  r.holds = std::abs(r.defect) <= 1e-12 * (1.0 + std::abs(r.rhs));
  return r;
}

}  // namespace caz
