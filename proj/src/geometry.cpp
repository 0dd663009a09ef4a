#include "caz/geometry.hpp"

#include <cmath>

namespace caz {

Complex embedding_inner_product(const ModelSpec& model, Complex z1, Complex z2) {
  model.require_in_domain(z1, "embedding_inner_product");
  model.require_in_domain(z2, "embedding_inner_product");
  const double L = model.intensity();
  const Complex w = z1 * std::conj(z2);
  switch (model.family()) {
    case Family::Elliptic:
      return std::pow(1.0 + w, model.degree());
    case Family::Flat:
      return std::exp(L * w);
    case Family::Hyperbolic:
      return std::exp(-L * std::log(1.0 - w));
  }
  return 0.0;
}

double fubini_study_distance(const ModelSpec& model, Complex z1, Complex z2) {
  const double gap = std::max(0.0, one_minus_abs_rho(model, z1, z2));
  return 2.0 * std::asin(std::sqrt(std::min(1.0, 0.5 * gap)));
}

double induced_metric_ratio(const ModelSpec& model, Complex z, Complex dz) {
  if (!(std::abs(dz) > 0.0)) throw std::invalid_argument("induced_metric_ratio needs dz != 0");
  const double d = fubini_study_distance(model, z - 0.5 * dz, z + 0.5 * dz);
  return d / (std::sqrt(model.intensity()) * std::abs(dz) / conformal_scale(model, z));
}

double edelman_kostlan_density(const ModelSpec& model, Complex z) {
  model.require_in_domain(z, "edelman_kostlan_density");
  const double step = 1e-3 * conformal_scale(model, z);
  if (!(step > 1e-12)) throw DomainError("edelman_kostlan_density: stencil step underflows near the boundary");
  if (model.family() == Family::Hyperbolic && std::abs(z) + step >= 1.0) {
    throw DomainError("edelman_kostlan_density: stencil leaves the domain");
  }
  auto stencil = [&](double h) {
    const double c = log_norm_psi(model, z);
    const double sum = log_norm_psi(model, z + h) + log_norm_psi(model, z - h) +
                       log_norm_psi(model, z + Complex{0.0, h}) + log_norm_psi(model, z - Complex{0.0, h});
    return (sum - 4.0 * c) / (h * h);
  };
  const double laplacian = (4.0 * stencil(0.5 * step) - stencil(step)) / 3.0;
  return laplacian / (2.0 * kPi);
}

Complex sphere_to_plane(const Point3& x) {
  const double norm = x.x0 * x.x0 + x.x1 * x.x1 + x.x2 * x.x2;
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("sphere_to_plane: point is not on the unit sphere");
  if (x.x0 >= 1.0 || 1.0 - x.x0 < 1e-300) throw DomainError("sphere_to_plane: the pole x0 = 1 maps to infinity");
  return Complex{x.x1, x.x2} / (1.0 - x.x0);
}

Point3 plane_to_sphere(Complex z) {
  const double r2 = std::norm(z);
  const Complex w = 2.0 * z / (1.0 + r2);
  return {(r2 - 1.0) / (r2 + 1.0), w.real(), w.imag()};
}

Complex hyperboloid_to_disk(const Point3& x) {
  const double form = x.x0 * x.x0 - x.x1 * x.x1 - x.x2 * x.x2;
  if (x.x0 < 1.0 - 1e-12 || std::abs(form - 1.0) > 1e-9 * x.x0 * x.x0) {
    throw std::invalid_argument("hyperboloid_to_disk: point is not on the upper hyperboloid sheet");
  }
  return Complex{x.x1, x.x2} / (1.0 + x.x0);
}

Point3 disk_to_hyperboloid(Complex z) {
  const double r2 = std::norm(z);
  if (r2 >= 1.0) throw DomainError("disk_to_hyperboloid: point outside the unit disk");
  const Complex w = 2.0 * z / (1.0 - r2);
  return {(1.0 + r2) / (1.0 - r2), w.real(), w.imag()};
}

}  // namespace caz
