#include "caz/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace caz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::span<const Complex> trim_high_zeros(std::span<const Complex> coeffs) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  return coeffs.first(n);
}

}  // namespace

HornerValue horner_reversed(std::span<const Complex> coeffs, Complex w) {
  Complex value = coeffs.front();
  Complex derivative = 0.0;
  double bound = std::abs(coeffs.front());
  const double aw = std::abs(w);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    derivative = derivative * w + value;
    value = value * w + coeffs[k];
    bound = bound * aw + std::abs(coeffs[k]);
  }
  return {value, derivative, bound};
}

HornerValue horner(std::span<const Complex> coeffs, Complex z) {
  if (coeffs.empty()) return {0.0, 0.0, 0.0};
  Complex value = coeffs.back();
  Complex derivative = 0.0;
  double bound = std::abs(coeffs.back());
  const double az = std::abs(z);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    derivative = derivative * z + value;
    value = value * z + coeffs[k];
    bound = bound * az + std::abs(coeffs[k]);
  }
  return {value, derivative, bound};
}

Complex newton_correction(std::span<const Complex> coeffs, Complex z, bool* converged) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (std::abs(z) <= 1.0) {
    const HornerValue h = horner(coeffs, z);
    if (converged) *converged = std::abs(h.value) <= 4.0 * kEps * h.magnitude_bound;
    if (h.derivative == 0.0) return h.value == 0.0 ? Complex{0.0} : Complex{kEps * (1.0 + std::abs(z))};
    return h.value / h.derivative;
  }
  // p'(z)/p(z) = w (N - w q'(w)/q(w)), w = 1/z.
  const Complex w = 1.0 / z;
  const HornerValue h = horner_reversed(coeffs, w);
  if (converged) *converged = std::abs(h.value) <= 4.0 * kEps * h.magnitude_bound;
  if (h.value == 0.0) return 0.0;
  const Complex log_derivative = w * (static_cast<double>(degree) - w * h.derivative / h.value);
  if (log_derivative == 0.0) return Complex{kEps * std::abs(z)};
  return 1.0 / log_derivative;
}

std::vector<Complex> newton_polygon_start(std::span<const Complex> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> logs(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double a = std::abs(coeffs[k]);
    logs[k] = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
  }
  // Upper convex hull (Andrew's monotone chain) over points with finite log.
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(logs[static_cast<std::size_t>(k)])) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      const double cross = (j - i) * (logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(i)]) -
                           (k - i) * (logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(i)]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> start;
  start.reserve(static_cast<std::size_t>(n));
  constexpr double kOffset = 0.7;  // breaks the symmetry between circles
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e];
    const int j = hull[e + 1];
    const int count = j - i;
    const double radius =
        std::exp((logs[static_cast<std::size_t>(i)] - logs[static_cast<std::size_t>(j)]) / count);
    for (int m = 0; m < count; ++m) {
      const double angle = 2.0 * kPi * m / count + 2.0 * kPi * i / (n + 1) + kOffset;
      start.push_back(std::polar(radius, angle));
    }
  }
  return start;
}

std::vector<Complex> companion_roots(std::span<const Complex> coeffs_in) {
  const std::span<const Complex> coeffs = trim_high_zeros(coeffs_in);
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

PolynomialRoots aberth_roots(std::span<const Complex> coeffs_in, int max_sweeps) {
  PolynomialRoots result;
  std::span<const Complex> coeffs = trim_high_zeros(coeffs_in);
  if (coeffs.size() <= 1) return result;
  std::size_t zero_roots = 0;
  while (zero_roots < coeffs.size() && coeffs[zero_roots] == 0.0) ++zero_roots;
  coeffs = coeffs.subspan(zero_roots);
  result.roots.assign(zero_roots, Complex{0.0, 0.0});

  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return result;
  if (n == 1) {
    result.roots.push_back(-coeffs[0] / coeffs[1]);
    return result;
  }

  std::vector<Complex> z = newton_polygon_start(coeffs);
  std::vector<char> done(n, 0);
  std::size_t remaining = n;
  int sweep = 0;
  for (; sweep < max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      bool converged = false;
      const Complex ratio = newton_correction(coeffs, z[i], &converged);
      if (converged) {
        done[i] = 1;
        --remaining;
        continue;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  result.sweeps = sweep;
  if (remaining > 0 || std::any_of(z.begin(), z.end(), [](Complex c) {
        return !std::isfinite(c.real()) || !std::isfinite(c.imag());
      })) {
    z = companion_roots(coeffs);
    result.used_companion_fallback = true;
  }
  result.roots.insert(result.roots.end(), z.begin(), z.end());
  return result;
}

}  // namespace caz
