#pragma once

#include <memory>
#include <vector>

namespace caz {

/// Coefficient c_{2 alpha} in log|zeta| = sum_alpha c_{2 alpha} / alpha! :|zeta|^{2 alpha}:
/// for a standard complex Gaussian zeta, where
/// :|zeta|^{2 alpha}: = (-1)^alpha alpha! L_alpha(|zeta|^2).
///
/// alpha = 0 gives E log|zeta|. For alpha >= 1, c_{2 alpha} = (-1)^alpha / 2 *
/// int_0^inf log(x) L_alpha(x) e^{-x} dx; after integrating by parts the
/// integrand is the polynomial (L_alpha - L_{alpha-1}) / x, which Gauss-Laguerre
/// integrates exactly once the order exceeds alpha / 2.
double wick_log_coeff(int alpha);

/// c_{2 alpha} for alpha = 0..max_alpha, all from one Gauss-Laguerre rule.
/// The rule order is raised until two successive orders agree to 1e-12.
std::vector<double> wick_log_coeffs(int max_alpha);

/// E log|zeta| = -gamma / 2, by the trapezoid rule in u = log|zeta|^2.
double mean_log_abs();
/// Var log|zeta| = pi^2 / 24, by the same quadrature.
double log_abs_variance();

struct KappaResult {
  double value = 0.0;         // partial sum plus tail estimate
  double partial_sum = 0.0;   // (1/4 pi) sum_{alpha<=terms} c^2 / alpha
  double tail_estimate = 0.0;
  int terms = 0;
  double last_increment = 0.0;
};

/// kappa = (1 / 4 pi) sum_{alpha >= 1} c_{2 alpha}^2 / alpha. Terms are summed
/// until the increment falls below `increment_tol`; the remaining tail is
/// estimated by Richardson extrapolation of the partial sums at A, A/2, A/4.
KappaResult kappa(double increment_tol = 1e-12);
/// Partial sum (1 / 4 pi) sum_{alpha=1}^{terms} c^2 / alpha.
double kappa_partial(int terms);

struct ParsevalResult {
  double partial_sum = 0.0;   // sum_{alpha=1}^{terms} c^2
  double extrapolated = 0.0;  // Richardson limit in 1 / A
  int terms = 0;
};
/// sum_{alpha >= 1} c_{2 alpha}^2, which should reproduce Var log|zeta|.
ParsevalResult parseval_sum(int terms);

/// Shared cached table of c_{2 alpha}, alpha = 0..n (thread-safe).
std::shared_ptr<const std::vector<double>> cached_wick_coeffs(int n);

}  // namespace caz
