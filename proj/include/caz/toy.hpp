#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "caz/experiment.hpp"
#include "caz/rng.hpp"
#include "caz/test_function.hpp"
#include "caz/zeros.hpp"

namespace caz {

/// Perturbed-lattice point processes with intensity 1/pi:
///   Thinned           sqrt(pi/2) Z^2, each site kept with probability 1/2
///   Perturbed         sqrt(pi) Z^2 + c eta_{k,l}
///   ClusterScattered  sqrt(3 pi) Z^2 + c e^{2 pi i m / 3} eta_{k,l}, m = 0, 1, 2,
///                     one eta per cluster shared by its three points
enum class ToyVariant { Thinned = 1, Perturbed = 2, ClusterScattered = 3 };

std::string_view to_string(ToyVariant variant);
/// Accepts 1/2/3 or thinned/perturbed/cluster.
ToyVariant parse_toy_variant(std::string_view text);
double toy_lattice_spacing(ToyVariant variant);

struct ToySpec {
  ToyVariant variant = ToyVariant::Thinned;
  double c = 0.0;  // scatter scale, variants 2 and 3
  double L = 1.0;
  Region window;   // unscaled coordinates
};

/// Spec whose window is the support of z -> h(z / sqrt(L)).
ToySpec toy_spec_for(ToyVariant variant, double c, double L, const TestFunction& h);

/// Points generated from every lattice site within the window plus a margin
/// of 6c and one lattice cell.
std::vector<Complex> sample_toy(const ToySpec& spec, ComplexGaussianStream& stream);

/// sum h(z_i / sqrt(L)); throws std::invalid_argument when the scaled support
/// is not covered by the window.
double toy_linear_statistic(std::span<const Complex> points, const TestFunction& h, double L, const Region& window);

/// (L / pi) int h dm.
double toy_expected_statistic(const ToySpec& spec, const TestFunction& h);

/// Leading-order variance:
///   Thinned           (L / 2 pi) ||h||^2
///   Perturbed         (c^2 / 2 pi) ||grad h||^2
///   ClusterScattered  3 c^4 / (16 pi L) ||Delta h||^2
double toy_variance_prediction(const ToySpec& spec, const TestFunction& h);

/// Exact variance of the thinned statistic, (1/4) sum_sites h(s / sqrt(L))^2.
double thinned_variance_lattice_sum(double L, const TestFunction& h);

/// Scatter scale c = 2 (pi kappa / 3)^{1/4} at which the cluster model's
/// variance matches (kappa / L) ||Delta h||^2.
double mimic_cluster_scale(double kappa);

struct ToyExperiment {
  std::vector<double> z;
  Moments moments;
  double predicted_mean = 0.0;
  double predicted_variance = 0.0;
};
/// Trials use streams (seed, trial).
ToyExperiment run_toy_experiment(const ToySpec& spec, const TestFunction& h, int trials, std::uint64_t seed,
                                 int threads = 0);

/// Q(x, y) = a x^2 + b x y + c y^2 + d x + e y + f.
struct QuadraticForm {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
  double operator()(Complex z) const;
  double laplacian() const { return 2.0 * (a + c); }
};

struct DirectionAverage {
  double lhs = 0.0;     // (1/n) sum_m (Q(e^{2 pi i m / n}) - Q(0))
  double rhs = 0.0;     // Delta Q(0) / 4
  double defect = 0.0;  // lhs - rhs
  bool holds = false;   // |defect| <= 1e-12 (1 + |rhs|)
};
/// Throws std::invalid_argument for n < 2.
DirectionAverage direction_average_identity(const QuadraticForm& q, int n);

}  // namespace caz
