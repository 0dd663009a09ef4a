#include "caz/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "caz/wick.hpp"

namespace caz {

double invariant_laplacian(const TestFunction& h, const ModelSpec& model, Complex z) {
  model.require_in_domain(z, "invariant_laplacian");
  if (!h.in_support(z)) return 0.0;
  const double s = conformal_scale(model, z);
  return s * s * h.laplacian(z);
}

double linear_statistic(const ZeroSet& zeros, const TestFunction& h) {
  if (!zeros.certified()) throw std::invalid_argument("linear_statistic: zero set is not certified");
  if (zeros.region.kind == RegionKind::Disk) {
    if (h.whole_sphere() ||
        std::abs(h.center() - zeros.region.center) + h.radius() > zeros.region.radius * (1.0 + 1e-12)) {
      throw std::invalid_argument("linear_statistic: support of h is not inside the zero region");
    }
  }
  CompensatedSum sum;
  for (std::size_t i = 0; i < zeros.zeros.size(); ++i) {
    sum.add(zeros.multiplicities[i] * h.value(zeros.zeros[i]));
  }
  return sum.value();
}

void require_support_in_domain(const ModelSpec& model, const TestFunction& h) {
  if (h.whole_sphere()) {
    if (model.family() != Family::Elliptic) {
      throw DomainError("whole-sphere test functions need the elliptic model");
    }
    return;
  }
  if (model.family() == Family::Hyperbolic && std::abs(h.center()) + h.radius() >= 1.0) {
    throw DomainError("support of h must lie inside the unit disk");
  }
}

double integrate_invariant(const ModelSpec& model, const std::function<double(Complex)>& f,
                           const TestFunction& h, const AdaptiveOptions& options) {
  require_support_in_domain(model, h);
  if (h.whole_sphere()) return integrate_sphere(f, options).value;
  return integrate_disk([&](Complex z) { return f(z) * invariant_measure_density(model, z); }, h.center(),
                        h.radius(), options)
      .value;
}

double expected_linear_statistic(const ModelSpec& model, const TestFunction& h) {
  return model.intensity() / kPi * integrate_invariant(model, [&](Complex z) { return h.value(z); }, h);
}

double laplacian_norm_squared(const ModelSpec& model, const TestFunction& h) {
  return integrate_invariant(
      model,
      [&](Complex z) {
        const double v = invariant_laplacian(h, model, z);
        return v * v;
      },
      h);
}

double variance_prediction(const ModelSpec& model, const TestFunction& h) {
  return kappa().value / model.intensity() * laplacian_norm_squared(model, h);
}

namespace {

double euclidean_integral(const TestFunction& h, const std::function<double(Complex)>& f) {
  if (h.whole_sphere()) throw std::invalid_argument("Euclidean norms need a compactly supported h");
  return integrate_disk(f, h.center(), h.radius()).value;
}

// Table of F(x) = sum c^2 x^alpha in t = -log(1 - x) for x > 1/2, where F is
// smooth in t; direct power series below.
class SeriesTable {
 public:
  static const SeriesTable& instance() {
    static const SeriesTable table;
    return table;
  }

  double operator()(double x, double one_minus_x) const {
    if (x <= 0.0) return 0.0;
    if (x <= 0.5) {
      double term = 1.0;
      double sum = 0.0;
      for (std::size_t a = 1; a < c2_.size(); ++a) {
        term *= x;
        sum += c2_[a] * term;
        if (term < 1e-18) break;
      }
      return sum;
    }
    const double t = -std::log(std::max(one_minus_x, 1e-300));
    if (t >= t_max_) return at_one_;
    const double u = (t - t_min_) / dt_;
    const std::size_t i = std::min(static_cast<std::size_t>(u), values_.size() - 2);
    const double f = u - i;
    // Cubic (Catmull-Rom) interpolation with one-sided ends.
    const double y1 = values_[i];
    const double y2 = values_[i + 1];
    const double y0 = i > 0 ? values_[i - 1] : 2.0 * y1 - y2;
    const double y3 = i + 2 < values_.size() ? values_[i + 2] : 2.0 * y2 - y1;
    return y1 + 0.5 * f * (y2 - y0 + f * (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3 + f * (3.0 * (y1 - y2) + y3 - y0)));
  }

 private:
  SeriesTable() {
    const auto coeffs = cached_wick_coeffs(4096);
    c2_.resize(coeffs->size());
    for (std::size_t a = 0; a < coeffs->size(); ++a) c2_[a] = (*coeffs)[a] * (*coeffs)[a];
    c2_[0] = 0.0;
    const int n = 16384;
    t_min_ = std::log(2.0) - 0.01;
    dt_ = (t_max_ - t_min_) / (n - 1);
    values_.resize(n);
    for (int i = 0; i < n; ++i) {
      const double t = t_min_ + dt_ * i;
      values_[static_cast<std::size_t>(i)] = direct(-std::expm1(-t));
    }
    at_one_ = direct(1.0);
  }

  double direct(double x) const {
    CompensatedSum sum;
    double term = 1.0;
    for (std::size_t a = 1; a < c2_.size(); ++a) {
      term *= x;
      sum.add(c2_[a] * term);
    }
    return sum.value();
  }

  std::vector<double> c2_;
  std::vector<double> values_;
  double t_min_ = 0.0;
  double t_max_ = 30.0;
  double dt_ = 0.0;
  double at_one_ = 0.0;
};

}  // namespace

double log_covariance_series(double x) { return SeriesTable::instance()(x, 1.0 - x); }

double l2_norm_squared(const TestFunction& h) {
  return euclidean_integral(h, [&](Complex z) {
    const double v = h.value(z);
    return v * v;
  });
}

double gradient_norm_squared(const TestFunction& h) {
  return euclidean_integral(h, [&](Complex z) { return std::norm(h.gradient(z)); });
}

double euclidean_laplacian_norm_squared(const TestFunction& h) {
  return euclidean_integral(h, [&](Complex z) {
    const double v = h.laplacian(z);
    return v * v;
  });
}

double exact_variance_series(const ModelSpec& model, const TestFunction& h, int radial_nodes, int angular_nodes) {
  if (h.whole_sphere()) throw std::invalid_argument("exact_variance_series needs a compactly supported h");
  require_support_in_domain(model, h);
  const SeriesTable& series = SeriesTable::instance();

  struct Node {
    Complex z;
    double weight;  // Delta* h * dm* quadrature weight
  };
  auto nodes_for = [&](int nr, int nphi) {
    const QuadratureRule gl = gauss_legendre(nr);
    const double dphi = 2.0 * kPi / nphi;
    std::vector<Node> nodes;
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * h.radius() * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
      const double w = 0.5 * h.radius() * gl.weights[static_cast<std::size_t>(i)] * r * dphi;
      for (int j = 0; j < nphi; ++j) {
        // Offset alternate rings so the two grids never share a point.
        const Complex z = h.center() + std::polar(r, dphi * (j + 0.5 * (i % 2)));
        const double lap = h.laplacian(z);  // Delta* h dm* = Delta h dm
        if (lap != 0.0) nodes.push_back({z, w * lap});
      }
    }
    return nodes;
  };
  const std::vector<Node> outer = nodes_for(radial_nodes, angular_nodes);
  const std::vector<Node> inner = nodes_for(2 * radial_nodes + 1, 2 * angular_nodes);
  CompensatedSum total;
  for (const Node& a : outer) {
    double row = 0.0;
    for (const Node& b : inner) {
      const double m = one_minus_abs_rho(model, a.z, b.z);
      const double one_minus_x = m * (2.0 - m);
      row += series(1.0 - one_minus_x, one_minus_x) * b.weight;
    }
    total.add(a.weight * row);
  }
  return total.value() / (4.0 * kPi * kPi);
}

}  // namespace caz
