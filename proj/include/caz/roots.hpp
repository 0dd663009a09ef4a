#pragma once

#include <span>
#include <vector>

#include "caz/types.hpp"

namespace caz {

/// p(z), p'(z) and the running-error bound sum |c_k| |z|^k of a polynomial
/// with coefficients in ascending order.
struct HornerValue {
  Complex value;
  Complex derivative;
  double magnitude_bound;
};
HornerValue horner(std::span<const Complex> coeffs, Complex z);
/// Same for the reversed polynomial q(w) = sum_k c_k w^{N-k}, so that
/// p(z) = z^N q(1/z).
HornerValue horner_reversed(std::span<const Complex> coeffs, Complex w);

/// Newton correction p(z) / p'(z). For |z| > 1 it is evaluated through the
/// reversed polynomial so that z^N never overflows.
Complex newton_correction(std::span<const Complex> coeffs, Complex z, bool* converged = nullptr);

struct PolynomialRoots {
  std::vector<Complex> roots;
  int sweeps = 0;
  bool used_companion_fallback = false;
};

/// All roots of the polynomial by Aberth-Ehrlich simultaneous iteration,
/// started from the Newton-polygon radii of the coefficient moduli. Falls
/// back to companion-matrix eigenvalues when the iteration stalls.
/// Trailing exact-zero high coefficients are dropped; exact zeros at the
/// origin are reported as roots at 0.
PolynomialRoots aberth_roots(std::span<const Complex> coeffs, int max_sweeps = 500);

/// Eigenvalues of the (balanced) companion matrix.
std::vector<Complex> companion_roots(std::span<const Complex> coeffs);

/// Initial guesses on circles whose radii come from the upper convex hull
/// of (k, log|c_k|).
std::vector<Complex> newton_polygon_start(std::span<const Complex> coeffs);

}  // namespace caz
