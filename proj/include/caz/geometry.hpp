#pragma once

#include "caz/model.hpp"

namespace caz {

/// <iota(z1), iota(z2)> for the coherent-state embedding whose kernel is the
/// covariance: (1 + z1 conj(z2))^L, exp(L z1 conj(z2)), (1 - z1 conj(z2))^{-L}.
Complex embedding_inner_product(const ModelSpec& model, Complex z1, Complex z2);

/// Fubini-Study distance arccos |rho(z1, z2)| in [0, pi/2], evaluated as
/// 2 asin(sqrt((1 - |rho|) / 2)) to keep precision for nearby points.
double fubini_study_distance(const ModelSpec& model, Complex z1, Complex z2);

/// dist(z - dz/2, z + dz/2) / (sqrt(L) |dz| / s(z)); tends to 1 as dz -> 0.
double induced_metric_ratio(const ModelSpec& model, Complex z, Complex dz);

/// (1 / 2 pi) Delta log ||psi(z)|| by a five-point stencil with one Richardson
/// step; the initial step is 1e-3 s(z). Throws DomainError when the step
/// would leave the domain or underflow.
double edelman_kostlan_density(const ModelSpec& model, Complex z);

struct Point3 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Unit sphere -> plane, z = (x1 + i x2) / (1 - x0); the pole x0 = 1 is an error.
Complex sphere_to_plane(const Point3& x);
Point3 plane_to_sphere(Complex z);
/// Upper sheet of x0^2 - x1^2 - x2^2 = 1 -> unit disk, z = (x1 + i x2) / (1 + x0).
Complex hyperboloid_to_disk(const Point3& x);
Point3 disk_to_hyperboloid(Complex z);

}  // namespace caz
