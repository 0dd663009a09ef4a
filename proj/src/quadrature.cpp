#include "caz/quadrature.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace caz {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the final node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

// L_n(x) / L_n'(x) via the three-term recurrence with rescaling.
double laguerre_newton_step(int n, double x) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 1) return cur / -1.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150) {
      prev /= mag;
      cur /= mag;
    }
  }
  // L_n'(x) = n (L_n(x) - L_{n-1}(x)) / x
  const double derivative = n * (cur - prev) / x;
  return cur / derivative;
}

}  // namespace

std::vector<double> gauss_laguerre_nodes(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre_nodes: n must be positive");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) sub[k - 1] = k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Laguerre Jacobi matrix eigensolve failed");
  std::vector<double> nodes(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (double& x : nodes) {
    for (int iter = 0; iter < 8; ++iter) {
      const double dx = laguerre_newton_step(n, x);
      if (!std::isfinite(dx)) break;
      x -= dx;
      if (std::abs(dx) <= 4e-16 * x) break;
    }
  }
  return nodes;
}

QuadratureRule gauss_laguerre(int n) {
  if (n > 150) throw std::invalid_argument("gauss_laguerre: use gauss_laguerre_nodes for n > 150");
  QuadratureRule rule;
  rule.nodes = gauss_laguerre_nodes(n);
  rule.weights.reserve(rule.nodes.size());
  for (double x : rule.nodes) {
    // Christoffel weight 1 / sum_{k<n} L_k(x)^2.
    double prev = 1.0;
    double cur = 1.0 - x;
    double sum = 1.0;
    for (int k = 1; k < n; ++k) {
      sum += cur * cur;
      const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
    rule.weights.push_back(1.0 / sum);
  }
  return rule;
}

namespace {

// Polar product rule; returns the integrals of f and |f|.
std::pair<double, double> polar_pass(const std::function<double(Complex)>& f, Complex center,
                                     double radius, int radial_nodes, int angular_nodes) {
  const QuadratureRule gl = gauss_legendre(radial_nodes);
  const double dphi = 2.0 * kPi / angular_nodes;
  CompensatedSum total;
  CompensatedSum total_abs;
  for (int i = 0; i < radial_nodes; ++i) {
    const double rr = 0.5 * radius * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
    const double wr = 0.5 * radius * gl.weights[static_cast<std::size_t>(i)] * rr * dphi;
    double ring = 0.0;
    double ring_abs = 0.0;
    for (int j = 0; j < angular_nodes; ++j) {
      const double v = f(center + std::polar(rr, dphi * j));
      ring += v;
      ring_abs += std::abs(v);
    }
    total.add(wr * ring);
    total_abs.add(wr * ring_abs);
  }
  return {total.value(), total_abs.value()};
}

}  // namespace

double integrate_disk_fixed(const std::function<double(Complex)>& f, Complex center, double radius,
                            int radial_nodes, int angular_nodes) {
  return polar_pass(f, center, radius, radial_nodes, angular_nodes).first;
}

namespace {

template <class Evaluate>
Integral adapt(Evaluate&& evaluate, const AdaptiveOptions& options, const char* what) {
  int nr = options.initial_radial;
  int nphi = options.initial_angular;
  auto [prev, prev_abs] = evaluate(nr, nphi);
  while (nr < options.max_radial) {
    nr *= 2;
    nphi *= 2;
    auto [cur, cur_abs] = evaluate(nr, nphi);
    const double scale = std::max(cur_abs, std::numeric_limits<double>::min());
    if (std::abs(cur - prev) <= options.rel_tol * scale) return Integral{cur, nr, nphi};
    prev = cur;
  }
  throw ConvergenceError(std::string(what) + ": quadrature did not reach the requested tolerance");
}

}  // namespace

Integral integrate_disk(const std::function<double(Complex)>& f, Complex center, double radius,
                        const AdaptiveOptions& options) {
  if (!(radius > 0.0)) return Integral{0.0, 0, 0};
  auto evaluate = [&](int nr, int nphi) { return polar_pass(f, center, radius, nr, nphi); };
  return adapt(evaluate, options, "integrate_disk");
}

Integral integrate_sphere(const std::function<double(Complex)>& f, const AdaptiveOptions& options) {
  auto evaluate = [&](int nt, int nphi) {
    const QuadratureRule gl = gauss_legendre(nt);
    const double dphi = 2.0 * kPi / nphi;
    CompensatedSum total;
    CompensatedSum total_abs;
    for (int i = 0; i < nt; ++i) {
      const double theta = 0.5 * kPi * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
      const double w = 0.5 * kPi * gl.weights[static_cast<std::size_t>(i)] * 0.25 * std::sin(theta);
      const double r = std::tan(0.5 * theta);
      double ring = 0.0;
      double ring_abs = 0.0;
      for (int j = 0; j < nphi; ++j) {
        const double v = f(std::polar(r, dphi * j));
        ring += v;
        ring_abs += std::abs(v);
      }
      total.add(w * ring * dphi);
      total_abs.add(w * ring_abs * dphi);
    }
    return std::pair{total.value(), total_abs.value()};
  };
  return adapt(evaluate, options, "integrate_sphere");
}

}  // namespace caz
