#include "caz/wick.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "caz/quadrature.hpp"
#include "caz/types.hpp"

namespace caz {

namespace {

constexpr double kRescale = 1e100;
const double kLogRescale = std::log(kRescale);

// int_0^inf e^{-x} (L_a(x) - L_{a-1}(x)) / x dx for a = 1..max_alpha with an
// `order`-point Gauss-Laguerre rule. Laguerre values are carried as
// value * exp(log_scale) so that neither L_k(x_i) nor the weights overflow.
std::vector<double> log_projections(int max_alpha, int order) {
  const std::vector<double> nodes = gauss_laguerre_nodes(order);
  const int kmax = std::max(order - 1, max_alpha);
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(max_alpha + 1));
  std::vector<double> value(static_cast<std::size_t>(kmax + 1));
  std::vector<double> log_scale(static_cast<std::size_t>(kmax + 1));
  for (double x : nodes) {
    double prev = 1.0;
    double cur = 1.0 - x;
    double scale = 0.0;
    value[0] = prev;
    log_scale[0] = 0.0;
    if (kmax >= 1) {
      value[1] = cur;
      log_scale[1] = 0.0;
    }
    for (int k = 1; k < kmax; ++k) {
      double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
      if (std::abs(next) > kRescale) {
        next /= kRescale;
        cur /= kRescale;
        scale += kLogRescale;
      }
      prev = cur;
      cur = next;
      value[static_cast<std::size_t>(k + 1)] = next;
      log_scale[static_cast<std::size_t>(k + 1)] = scale;
    }
    // Christoffel weight: w = 1 / sum_{k<order} L_k(x)^2.
    double top = 0.0;
    for (int k = 0; k < order; ++k) top = std::max(top, log_scale[static_cast<std::size_t>(k)]);
    double sum_sq = 0.0;
    for (int k = 0; k < order; ++k) {
      const double v = value[static_cast<std::size_t>(k)] * std::exp(log_scale[static_cast<std::size_t>(k)] - top);
      sum_sq += v * v;
    }
    const double log_norm = 2.0 * top + std::log(sum_sq);
    auto weighted = [&](int k) {
      return value[static_cast<std::size_t>(k)] * std::exp(log_scale[static_cast<std::size_t>(k)] - log_norm);
    };
    double lower = weighted(0);
    for (int a = 1; a <= max_alpha; ++a) {
      const double upper = weighted(a);
      sums[static_cast<std::size_t>(a)].add((upper - lower) / x);
      lower = upper;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(max_alpha + 1), 0.0);
  for (int a = 1; a <= max_alpha; ++a) out[static_cast<std::size_t>(a)] = sums[static_cast<std::size_t>(a)].value();
  return out;
}

std::vector<double> coeffs_from_projections(const std::vector<double>& projections) {
  std::vector<double> c(projections.size());
  c[0] = mean_log_abs();
  for (std::size_t a = 1; a < projections.size(); ++a) {
    c[a] = (a % 2 == 0 ? 0.5 : -0.5) * projections[a];
  }
  return c;
}

// Trapezoid rule for int u^m e^{u - e^u} du = E[(log X)^m], X ~ Exp(1).
double log_exponential_moment(int m) {
  const double h = 0.02;
  CompensatedSum sum;
  for (double u = -48.0; u <= 4.5; u += h) sum.add(std::pow(u, m) * std::exp(u - std::exp(u)));
  return sum.value() * h;
}

}  // namespace

double mean_log_abs() { return 0.5 * log_exponential_moment(1); }

double log_abs_variance() {
  const double m1 = log_exponential_moment(1);
  const double m2 = log_exponential_moment(2);
  return 0.25 * (m2 - m1 * m1);
}

std::vector<double> wick_log_coeffs(int max_alpha) {
  if (max_alpha < 0) throw std::invalid_argument("wick_log_coeffs: max_alpha must be non-negative");
  if (max_alpha == 0) return {mean_log_abs()};
  int order = max_alpha / 2 + 2;
  std::vector<double> previous = log_projections(max_alpha, order);
  for (int attempt = 0; attempt < 8; ++attempt) {
    order += 4;
    std::vector<double> next = log_projections(max_alpha, order);
    double diff = 0.0;
    for (int a = 1; a <= max_alpha; ++a) {
      diff = std::max(diff, std::abs(next[static_cast<std::size_t>(a)] - previous[static_cast<std::size_t>(a)]));
    }
    if (diff < 1e-12) return coeffs_from_projections(next);
    previous = std::move(next);
  }
  throw ConvergenceError("Wick coefficient quadrature did not stabilize");
}

double wick_log_coeff(int alpha) {
  if (alpha < 0) throw std::invalid_argument("wick_log_coeff: alpha must be non-negative");
  return wick_log_coeffs(alpha)[static_cast<std::size_t>(alpha)];
}

// One table per power-of-two size, so a given request always sees the same
// rule (and the same rounding) whatever was computed before it.
std::shared_ptr<const std::vector<double>> cached_wick_coeffs(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<double>>> tables;
  int size = 64;
  while (size < n) size *= 2;
  std::lock_guard lock(mutex);
  auto& table = tables[size];
  if (!table) table = std::make_shared<const std::vector<double>>(wick_log_coeffs(size));
  return table;
}

namespace {

double kappa_partial(const std::vector<double>& c, int terms) {
  CompensatedSum sum;
  for (int a = 1; a <= terms; ++a) sum.add(c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)] / a);
  return sum.value() / (4.0 * kPi);
}

}  // namespace

double kappa_partial(int terms) { return kappa_partial(*cached_wick_coeffs(terms), terms); }

KappaResult kappa(double increment_tol) {
  int size = 256;
  int terms = 0;
  while (terms == 0) {
    const auto table = cached_wick_coeffs(size);
    const std::vector<double>& c = *table;
    for (int a = 1; a <= size; ++a) {
      const double inc = c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)] / (4.0 * kPi * a);
      if (inc < increment_tol && a >= 8) {
        terms = a;
        break;
      }
    }
    if (terms == 0) {
      if (size > (1 << 16)) throw ConvergenceError("kappa series increments did not fall below tolerance");
      size *= 2;
    }
  }
  terms = (terms + 3) / 4 * 4;
  const auto table = cached_wick_coeffs(terms);
  const std::vector<double>& c = *table;
  KappaResult r;
  r.terms = terms;
  r.partial_sum = kappa_partial(c, terms);
  r.last_increment = c[static_cast<std::size_t>(terms)] * c[static_cast<std::size_t>(terms)] / (4.0 * kPi * terms);
  // S(A) = kappa - a / A^2 - b / A^3 at A, A/2, A/4.
  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    const double A = terms >> i;
    m(i, 0) = 1.0;
    m(i, 1) = -1.0 / (A * A);
    m(i, 2) = -1.0 / (A * A * A);
    rhs[i] = kappa_partial(c, terms >> i);
  }
  const Eigen::Vector3d sol = m.fullPivLu().solve(rhs);
  r.value = sol[0];
  r.tail_estimate = r.value - r.partial_sum;
  return r;
}

ParsevalResult parseval_sum(int terms) {
  if (terms < 16) throw std::invalid_argument("parseval_sum needs at least 16 terms");
  terms = terms / 8 * 8;
  const auto table = cached_wick_coeffs(terms);
  const std::vector<double>& c = *table;
  auto partial = [&](int n) {
    CompensatedSum s;
    for (int a = 1; a <= n; ++a) s.add(c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)]);
    return s.value();
  };
  // S(A) = V - a / A - b / A^2 - d / A^3 at A, A/2, A/4, A/8.
  Eigen::Matrix4d m;
  Eigen::Vector4d rhs;
  for (int i = 0; i < 4; ++i) {
    const double A = terms >> i;
    m(i, 0) = 1.0;
    m(i, 1) = -1.0 / A;
    m(i, 2) = -1.0 / (A * A);
    m(i, 3) = -1.0 / (A * A * A);
    rhs[i] = partial(terms >> i);
  }
  ParsevalResult r;
  r.terms = terms;
  r.partial_sum = rhs[0];
  r.extrapolated = m.fullPivLu().solve(rhs)[0];
  return r;
}

}  // namespace caz
