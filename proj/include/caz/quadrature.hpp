#pragma once

#include <functional>
#include <vector>

#include "caz/types.hpp"

namespace caz {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Nodes of the n-point Gauss-Laguerre rule (weight e^{-x} on [0, inf)),
/// from the Jacobi matrix eigenvalues followed by Newton polishing on L_n.
/// Weights are not formed here: for large n they underflow, and callers
/// use the Christoffel form w_i = 1 / sum_{k<n} L_k(x_i)^2 in scaled arithmetic.
std::vector<double> gauss_laguerre_nodes(int n);

/// Gauss-Laguerre rule with explicit weights; intended for moderate n (<= 150).
QuadratureRule gauss_laguerre(int n);

struct Integral {
  double value = 0.0;
  int radial_nodes = 0;
  int angular_nodes = 0;
};

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  int initial_radial = 16;
  int initial_angular = 32;
  int max_radial = 4096;
};

/// Integral of f over the disk |z - center| < radius against Lebesgue
/// measure. Polar coordinates: Gauss-Legendre in the radius, trapezoid in
/// the angle; both orders double until two successive estimates agree to
/// rel_tol relative to the integral of |f|. Throws ConvergenceError otherwise.
Integral integrate_disk(const std::function<double(Complex)>& f, Complex center, double radius,
                        const AdaptiveOptions& options = {});

/// Integral of f against the spherical measure (1 + |z|^2)^{-2} dm(z) over
/// the whole plane, in polar angle theta with |z| = tan(theta / 2), so that
/// the measure becomes (1/4) sin(theta) d(theta) d(phi). Total mass is pi.
Integral integrate_sphere(const std::function<double(Complex)>& f, const AdaptiveOptions& options = {});

/// Fixed-order polar product rule on a disk (no adaptivity).
double integrate_disk_fixed(const std::function<double(Complex)>& f, Complex center, double radius,
                            int radial_nodes, int angular_nodes);

/// Sum with Neumaier compensation, in the given order.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace caz
