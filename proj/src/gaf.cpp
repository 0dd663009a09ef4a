#include "caz/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caz {

namespace {

constexpr double kRadiusSlack = 1e-12;

// log of f_k^2 R^{2k}
double log_tail_term(const ModelSpec& model, int k, double log_radius) {
  return 2.0 * log_coefficient_factor(model, k) + 2.0 * k * log_radius;
}

}  // namespace

double truncation_tail(const ModelSpec& model, int order, double radius) {
  if (order < 0) throw std::invalid_argument("truncation order must be non-negative");
  if (!(radius >= 0.0)) throw std::invalid_argument("truncation radius must be non-negative");
  if (model.family() == Family::Elliptic) return 0.0;
  if (model.family() == Family::Hyperbolic && radius >= 1.0) {
    throw DomainError("hyperbolic truncation radius must be below 1");
  }
  if (radius == 0.0) return 0.0;

  const double log_r = std::log(radius);
  // Sum terms k > order in log-scale; the term ratio is eventually below
  // max(R^2, current ratio) < 1, which bounds the remainder geometrically.
  double scale = log_tail_term(model, order + 1, log_r);
  double sum = 0.0;
  for (int k = order + 1;; ++k) {
    const double lt = log_tail_term(model, k, log_r);
    if (lt > scale) {
      sum *= std::exp(scale - lt);
      scale = lt;
    }
    const double term = std::exp(lt - scale);
    sum += term;
    const double ratio = std::exp(log_tail_term(model, k + 1, log_r) - lt);
    const double bound_ratio =
        model.family() == Family::Flat ? ratio : std::max(ratio, radius * radius);
    if (bound_ratio < 1.0 && term * bound_ratio / (1.0 - bound_ratio) < 1e-17 * sum) {
      sum += term * bound_ratio / (1.0 - bound_ratio);
      break;
    }
    if (k - order > 50'000'000) throw ConvergenceError("truncation tail did not converge");
  }
  return std::exp(0.5 * (std::log(sum) + scale));
}

Truncation make_truncation(const ModelSpec& model, int order, double radius) {
  return Truncation{order, radius, truncation_tail(model, order, radius)};
}

GafSample::GafSample(ModelSpec model, std::vector<Complex> coefficients,
                     std::optional<Truncation> truncation, std::uint64_t seed, std::uint64_t stream)
    : model_(model),
      coefficients_(std::move(coefficients)),
      truncation_(truncation),
      seed_(seed),
      stream_(stream) {
  if (coefficients_.empty()) throw std::invalid_argument("sample needs at least one coefficient");
  if (model_.family() == Family::Elliptic) {
    if (truncation_) throw std::invalid_argument("elliptic samples are exact; no truncation");
    if (static_cast<int>(coefficients_.size()) != model_.degree() + 1) {
      throw std::invalid_argument("elliptic sample needs L + 1 coefficients");
    }
  } else {
    if (!truncation_) throw std::invalid_argument("flat/hyperbolic samples need a truncation");
    if (static_cast<int>(coefficients_.size()) != truncation_->order + 1) {
      throw std::invalid_argument("coefficient count must be truncation order + 1");
    }
  }
}

void GafSample::require_evaluable(Complex z) const {
  model_.require_in_domain(z, "evaluate");
  if (truncation_ && std::abs(z) > truncation_->radius * (1.0 + kRadiusSlack)) {
    throw DomainError("evaluate: |z| exceeds the certified truncation radius");
  }
}

std::pair<Complex, Complex> GafSample::evaluate_with_derivative(Complex z) const {
  require_evaluable(z);
  Complex value = coefficients_.back();
  Complex derivative = 0.0;
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) {
    derivative = derivative * z + value;
    value = value * z + *it;
  }
  return {value, derivative};
}

Complex GafSample::evaluate(Complex z) const {
  require_evaluable(z);
  Complex value = coefficients_.back();
  for (auto it = coefficients_.rbegin() + 1; it != coefficients_.rend(); ++it) {
    value = value * z + *it;
  }
  return value;
}

Complex GafSample::normalized_field(Complex z) const {
  return evaluate(z) / norm_psi(model_, z);
}

nlohmann::json GafSample::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Complex& c : coefficients_) coeffs.push_back({c.real(), c.imag()});
  nlohmann::json j{{"family", to_string(model_.family())},
                   {"L", model_.intensity()},
                   {"seed", seed_},
                   {"stream", stream_},
                   {"coefficients", coeffs}};
  if (truncation_) {
    j["N"] = truncation_->order;
    j["R"] = truncation_->radius;
    j["tail_bound"] = truncation_->tail_bound;
  } else {
    j["N"] = nullptr;
    j["R"] = nullptr;
  }
  return j;
}

GafSample GafSample::from_json(const nlohmann::json& j) {
  const ModelSpec model(parse_family(j.at("family").get<std::string>()), j.at("L").get<double>());
  std::vector<Complex> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  std::optional<Truncation> truncation;
  if (!j.at("N").is_null()) {
    truncation = Truncation{j.at("N").get<int>(), j.at("R").get<double>(),
                            j.value("tail_bound", 0.0)};
  }
  return GafSample(model, std::move(coeffs), truncation, j.value("seed", std::uint64_t{0}),
                   j.value("stream", std::uint64_t{0}));
}

GafSample sample_from_zetas(const ModelSpec& model, std::vector<Complex> zetas,
                            std::optional<Truncation> truncation) {
  for (std::size_t k = 0; k < zetas.size(); ++k) {
    zetas[k] *= coefficient_factor(model, static_cast<int>(k));
  }
  return GafSample(model, std::move(zetas), truncation);
}

GafSample sample_coefficients(const ModelSpec& model, ComplexGaussianStream& stream,
                              std::optional<Truncation> truncation) {
  int count = 0;
  if (model.family() == Family::Elliptic) {
    if (truncation) throw std::invalid_argument("elliptic sampling accepts only exact mode");
    count = model.degree() + 1;
  } else {
    if (!truncation) throw std::invalid_argument("flat/hyperbolic sampling needs a finite truncation");
    if (truncation->order < 0) throw std::invalid_argument("truncation order must be non-negative");
    count = truncation->order + 1;
  }
  const std::uint64_t seed = stream.seed();
  const std::uint64_t index = stream.stream();
  std::vector<Complex> coeffs(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    coeffs[static_cast<std::size_t>(k)] = stream.next() * coefficient_factor(model, k);
  }
  return GafSample(model, std::move(coeffs), truncation, seed, index);
}

}  // namespace caz
