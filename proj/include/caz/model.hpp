#pragma once

#include <string>
#include <string_view>

#include "caz/types.hpp"

namespace caz {

enum class Family { Elliptic, Flat, Hyperbolic };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// Symmetry family plus intensity L. Elliptic requires a positive integer L.
class ModelSpec {
 public:
  ModelSpec(Family family, double intensity);

  Family family() const { return family_; }
  double intensity() const { return intensity_; }
  /// Integer degree of the elliptic polynomial.
  int degree() const;

  /// Finite part of the domain: all of C for elliptic and flat, |z| < 1 for hyperbolic.
  bool contains(Complex z) const;
  /// Throws DomainError when `z` is outside the domain.
  void require_in_domain(Complex z, const char* what) const;

 private:
  Family family_;
  double intensity_;
};

/// log of the deterministic coefficient factor sqrt(L(L-1)...(L-k+1)/k!),
/// sqrt(L^k/k!) or sqrt(L(L+1)...(L+k-1)/k!). Returns -inf when the
/// factor vanishes (elliptic, k > L).
double log_coefficient_factor(const ModelSpec& model, int k);
double coefficient_factor(const ModelSpec& model, int k);

/// ||psi(z)|| = (E|psi(z)|^2)^{1/2}.
double norm_psi(const ModelSpec& model, Complex z);
double log_norm_psi(const ModelSpec& model, Complex z);

/// Normalized covariance E w(z1) conj(w(z2)), principal branch for
/// non-integer powers.
Complex rho(const ModelSpec& model, Complex z1, Complex z2);
/// |rho(z1, z2)|, evaluated without the cancellation of the complex form.
double abs_rho(const ModelSpec& model, Complex z1, Complex z2);
/// 1 - |rho(z1, z2)|, accurate when the points are close.
double one_minus_abs_rho(const ModelSpec& model, Complex z1, Complex z2);

/// Factor s(z) of the invariant line element |dz| / s(z): 1 + |z|^2, 1, 1 - |z|^2.
double conformal_scale(const ModelSpec& model, Complex z);
/// Density of m* with respect to Lebesgue measure: s(z)^{-2}.
double invariant_measure_density(const ModelSpec& model, Complex z);
/// Typical distance between neighbouring zeroes near z: s(z) / sqrt(L).
double local_spacing(const ModelSpec& model, Complex z);

/// Symmetry group element in the (a, b) parametrization of each family:
///   elliptic   z -> (a z + b) / (-conj(b) z + conj(a)),  |a|^2 + |b|^2 = 1
///   flat       z -> a z + b,                             |a| = 1
///   hyperbolic z -> (a z + b) / (conj(b) z + conj(a)),   |a|^2 - |b|^2 = 1
struct GroupElement {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
};

/// Throws std::invalid_argument when (a, b) violates the family's constraint.
void validate_group_element(const ModelSpec& model, const GroupElement& g);
Complex apply(const ModelSpec& model, const GroupElement& g, Complex z);

/// Unit-modulus u_g with rho(g z1, g z2) = u_g(z1) conj(u_g(z2)) rho(z1, z2).
/// Closed form exp(i L Im(a z conj(b))) for the flat family; for the other
/// families the kernel ratio rho(g z, g 0) conj(rho(z, 0)) normalized to
/// modulus one (fixing u_g(0) = 1).
Complex phase_multiplier(const ModelSpec& model, const GroupElement& g, Complex z);

}  // namespace caz
