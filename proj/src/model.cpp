#include "caz/model.hpp"

#include <cmath>
#include <limits>

namespace caz {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Elliptic:
      return "elliptic";
    case Family::Flat:
      return "flat";
    case Family::Hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "elliptic") return Family::Elliptic;
  if (name == "flat") return Family::Flat;
  if (name == "hyperbolic") return Family::Hyperbolic;
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

ModelSpec::ModelSpec(Family family, double intensity) : family_(family), intensity_(intensity) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw std::invalid_argument("intensity L must be positive and finite");
  }
  if (family == Family::Elliptic && std::floor(intensity) != intensity) {
    throw std::invalid_argument("elliptic model requires an integer L");
  }
}

int ModelSpec::degree() const {
  if (family_ != Family::Elliptic) {
    throw std::logic_error("degree() is only defined for the elliptic family");
  }
  return static_cast<int>(intensity_);
}

bool ModelSpec::contains(Complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return family_ != Family::Hyperbolic || std::norm(z) < 1.0;
}

void ModelSpec::require_in_domain(Complex z, const char* what) const {
  if (!contains(z)) {
    throw DomainError(std::string(what) + ": point outside the " +
                      std::string(to_string(family_)) + " domain");
  }
}

double log_coefficient_factor(const ModelSpec& model, int k) {
  if (k < 0) throw std::invalid_argument("coefficient index must be non-negative");
  const double L = model.intensity();
  const double kk = k;
  switch (model.family()) {
    case Family::Elliptic:
      if (k > model.degree()) return -std::numeric_limits<double>::infinity();
      return 0.5 * (std::lgamma(L + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(L - kk + 1.0));
    case Family::Flat:
      return 0.5 * (kk * std::log(L) - std::lgamma(kk + 1.0));
    case Family::Hyperbolic:
      return 0.5 * (std::lgamma(L + kk) - std::lgamma(L) - std::lgamma(kk + 1.0));
  }
  return 0.0;
}

double coefficient_factor(const ModelSpec& model, int k) {
  return std::exp(log_coefficient_factor(model, k));
}

double log_norm_psi(const ModelSpec& model, Complex z) {
  model.require_in_domain(z, "norm_psi");
  const double L = model.intensity();
  const double r2 = std::norm(z);
  switch (model.family()) {
    case Family::Elliptic:
      return 0.5 * L * std::log1p(r2);
    case Family::Flat:
      return 0.5 * L * r2;
    case Family::Hyperbolic:
      return -0.5 * L * std::log1p(-r2);
  }
  return 0.0;
}

double norm_psi(const ModelSpec& model, Complex z) { return std::exp(log_norm_psi(model, z)); }

namespace {

// log|rho|^2 written as L * log(1 - q) (elliptic, hyperbolic) or -L |z1 - z2|^2 (flat),
// using |1 + z1 conj(z2)|^2 - (1 + |z1|^2)(1 + |z2|^2) = -|z1 - z2|^2 and its
// hyperbolic counterpart.
double log_abs_rho_squared(const ModelSpec& model, Complex z1, Complex z2) {
  const double L = model.intensity();
  const double d2 = std::norm(z1 - z2);
  switch (model.family()) {
    case Family::Elliptic: {
      const double q = d2 / ((1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
      return L * std::log1p(-q);
    }
    case Family::Flat:
      return -L * d2;
    case Family::Hyperbolic: {
      const double q = d2 / std::norm(1.0 - z1 * std::conj(z2));
      return L * std::log1p(-q);
    }
  }
  return 0.0;
}

}  // namespace

double abs_rho(const ModelSpec& model, Complex z1, Complex z2) {
  model.require_in_domain(z1, "rho");
  model.require_in_domain(z2, "rho");
  return std::exp(0.5 * log_abs_rho_squared(model, z1, z2));
}

double one_minus_abs_rho(const ModelSpec& model, Complex z1, Complex z2) {
  model.require_in_domain(z1, "rho");
  model.require_in_domain(z2, "rho");
  return -std::expm1(0.5 * log_abs_rho_squared(model, z1, z2));
}

Complex rho(const ModelSpec& model, Complex z1, Complex z2) {
  const double modulus = abs_rho(model, z1, z2);
  const double L = model.intensity();
  double phase = 0.0;
  switch (model.family()) {
    case Family::Elliptic:
      phase = L * std::arg(1.0 + z1 * std::conj(z2));
      break;
    case Family::Flat:
      phase = L * (z1 * std::conj(z2)).imag();
      break;
    case Family::Hyperbolic:
      phase = -L * std::arg(1.0 - z1 * std::conj(z2));
      break;
  }
  return std::polar(modulus, phase);
}

double conformal_scale(const ModelSpec& model, Complex z) {
  model.require_in_domain(z, "conformal_scale");
  switch (model.family()) {
    case Family::Elliptic:
      return 1.0 + std::norm(z);
    case Family::Flat:
      return 1.0;
    case Family::Hyperbolic:
      return 1.0 - std::norm(z);
  }
  return 1.0;
}

double invariant_measure_density(const ModelSpec& model, Complex z) {
  const double s = conformal_scale(model, z);
  return 1.0 / (s * s);
}

double local_spacing(const ModelSpec& model, Complex z) {
  return conformal_scale(model, z) / std::sqrt(model.intensity());
}

void validate_group_element(const ModelSpec& model, const GroupElement& g) {
  constexpr double tol = 1e-12;
  switch (model.family()) {
    case Family::Elliptic:
      if (std::abs(std::norm(g.a) + std::norm(g.b) - 1.0) > tol) {
        throw std::invalid_argument("elliptic group element needs |a|^2 + |b|^2 = 1");
      }
      break;
    case Family::Flat:
      if (std::abs(std::abs(g.a) - 1.0) > tol) {
        throw std::invalid_argument("flat group element needs |a| = 1");
      }
      break;
    case Family::Hyperbolic:
      if (std::abs(std::norm(g.a) - std::norm(g.b) - 1.0) > tol) {
        throw std::invalid_argument("hyperbolic group element needs |a|^2 - |b|^2 = 1");
      }
      break;
  }
}

Complex apply(const ModelSpec& model, const GroupElement& g, Complex z) {
  validate_group_element(model, g);
  model.require_in_domain(z, "apply");
  switch (model.family()) {
    case Family::Elliptic: {
      const Complex den = -std::conj(g.b) * z + std::conj(g.a);
      if (den == 0.0) throw DomainError("group element maps the point to infinity");
      return (g.a * z + g.b) / den;
    }
    case Family::Flat:
      return g.a * z + g.b;
    case Family::Hyperbolic:
      return (g.a * z + g.b) / (std::conj(g.b) * z + std::conj(g.a));
  }
  return z;
}

Complex phase_multiplier(const ModelSpec& model, const GroupElement& g, Complex z) {
  validate_group_element(model, g);
  model.require_in_domain(z, "phase_multiplier");
  if (model.family() == Family::Flat) {
    return std::polar(1.0, model.intensity() * (g.a * z * std::conj(g.b)).imag());
  }
  const Complex image = rho(model, apply(model, g, z), apply(model, g, Complex{0.0, 0.0}));
  const Complex base = std::conj(rho(model, z, Complex{0.0, 0.0}));
  const Complex ratio = image * base;
  if (std::abs(ratio) == 0.0) {
    throw DomainError("phase multiplier undefined: image points are antipodal");
  }
  return ratio / std::abs(ratio);
}

}  // namespace caz
