#pragma once

#include <functional>

#include "caz/model.hpp"
#include "caz/quadrature.hpp"
#include "caz/test_function.hpp"
#include "caz/zeros.hpp"

namespace caz {

/// Delta* h(z) = s(z)^2 Delta h(z), with s the conformal scale of the model.
double invariant_laplacian(const TestFunction& h, const ModelSpec& model, Complex z);

/// Z(h) = sum of h over the zeroes, with multiplicity. Rejects uncertified sets
/// and sets whose region does not cover the support of h.
double linear_statistic(const ZeroSet& zeros, const TestFunction& h);

/// Throws DomainError unless the support of h lies inside the model domain.
void require_support_in_domain(const ModelSpec& model, const TestFunction& h);

/// int f dm* over the support of h (the whole sphere for whole-sphere h).
double integrate_invariant(const ModelSpec& model, const std::function<double(Complex)>& f,
                           const TestFunction& h, const AdaptiveOptions& options = {});

/// (L / pi) int h dm*.
double expected_linear_statistic(const ModelSpec& model, const TestFunction& h);
/// ||Delta* h||^2 in L^2(m*).
double laplacian_norm_squared(const ModelSpec& model, const TestFunction& h);
/// (kappa / L) ||Delta* h||^2.
double variance_prediction(const ModelSpec& model, const TestFunction& h);

/// Euclidean norms used by the toy models: ||h||^2, ||grad h||^2, ||Delta h||^2.
double l2_norm_squared(const TestFunction& h);
double gradient_norm_squared(const TestFunction& h);
double euclidean_laplacian_norm_squared(const TestFunction& h);

/// Var Z(h) from the chaos expansion of log|w|:
///   (1 / 4 pi^2) int int F(|rho(z1, z2)|^2) Delta* h(z1) Delta* h(z2) dm*(z1) dm*(z2),
/// F(x) = sum_{alpha >= 1} c_{2 alpha}^2 x^alpha with the quadrature coefficients.
/// Both integrals use the polar product rule on the support of h.
double exact_variance_series(const ModelSpec& model, const TestFunction& h, int radial_nodes = 32,
                             int angular_nodes = 64);

/// F(x) above, tabulated; exposed for tests.
double log_covariance_series(double x);

}  // namespace caz
