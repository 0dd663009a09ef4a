#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "caz/model.hpp"
#include "caz/rng.hpp"

namespace caz {

/// Certified truncation of an infinite power series: the coefficients with
/// index > order are discarded, and `tail_bound` bounds the root-mean-square
/// of the discarded tail uniformly on |z| <= radius.
struct Truncation {
  int order = 0;
  double radius = 0.0;
  double tail_bound = 0.0;
};

/// sqrt(sum_{k > order} f_k^2 R^{2k}), the RMS of the discarded tail at |z| = R.
double truncation_tail(const ModelSpec& model, int order, double radius);
Truncation make_truncation(const ModelSpec& model, int order, double radius);

/// One realization of the random analytic function, coefficients already
/// multiplied by their deterministic factors.
class GafSample {
 public:
  GafSample(ModelSpec model, std::vector<Complex> coefficients,
            std::optional<Truncation> truncation, std::uint64_t seed = 0, std::uint64_t stream = 0);

  const ModelSpec& model() const { return model_; }
  std::span<const Complex> coefficients() const { return coefficients_; }
  const std::optional<Truncation>& truncation() const { return truncation_; }
  bool exact() const { return !truncation_.has_value(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Throws DomainError outside the model domain or beyond the certified radius.
  void require_evaluable(Complex z) const;

  Complex evaluate(Complex z) const;
  /// psi(z) and psi'(z) in one Horner pass.
  std::pair<Complex, Complex> evaluate_with_derivative(Complex z) const;
  /// w_L(z) = psi(z) / ||psi(z)||.
  Complex normalized_field(Complex z) const;

  nlohmann::json to_json() const;
  static GafSample from_json(const nlohmann::json& j);

 private:
  ModelSpec model_;
  std::vector<Complex> coefficients_;
  std::optional<Truncation> truncation_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// Draws zeta_k from `stream` and multiplies in the model factors. Elliptic
/// samples are exact (pass std::nullopt); flat and hyperbolic samples need a
/// truncation.
GafSample sample_coefficients(const ModelSpec& model, ComplexGaussianStream& stream,
                              std::optional<Truncation> truncation);

/// Deterministic sample from given standard-normal-scale values zeta_k
/// (factors multiplied in here). Used for test vectors.
GafSample sample_from_zetas(const ModelSpec& model, std::vector<Complex> zetas,
                            std::optional<Truncation> truncation);

}  // namespace caz
