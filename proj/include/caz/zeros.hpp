#pragma once

#include <vector>

#include <json.hpp>

#include "caz/gaf.hpp"

namespace caz {

enum class RegionKind { FullSphere, Disk };

struct Region {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  RegionKind kind = RegionKind::Disk;

  static Region disk(Complex center, double radius);
  /// The whole Riemann sphere; elliptic samples only.
  static Region full_sphere();
  bool contains(Complex z) const;
  nlohmann::json to_json() const;
};

/// Argument-principle count around the region boundary, compared with the
/// number of located zeroes (with multiplicity).
struct Certificate {
  int argument_principle_count = 0;
  bool matches = false;
  double integer_distance = 0.0;
  int nodes = 0;
};

struct ZeroSet {
  std::vector<Complex> zeros;
  std::vector<int> multiplicities;
  /// |w(z)| / max(1, |w'(z)| * local_spacing(z)) at each polished zero,
  /// where w' = psi' / ||psi||.
  std::vector<double> residuals;
  /// Region actually certified (the radius may have been jittered outward).
  Region region;
  Certificate certificate;

  int count() const;
  double residual_max() const;
  bool certified() const { return certificate.matches; }
  nlohmann::json to_json() const;
};

/// Raised when the located zeroes and the argument-principle count still
/// disagree after every boundary retry.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(int found, int counted);
  int found() const { return found_; }
  int counted() const { return counted_; }

 private:
  int found_;
  int counted_;
};

/// Raised when the elliptic leading coefficient vanishes numerically
/// (a zero at infinity).
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZeroFinderOptions {
  /// A zero closer than boundary_fraction * radius to the contour triggers a retry.
  double boundary_fraction = 1e-6;
  int max_retries = 5;
  /// Zeroes closer than merge_fraction * local spacing are merged.
  double merge_fraction = 1e-9;
};

/// Smallest N with sum_{k > N} f_k^2 R^{2k} < tol^2. Throws CapExceeded
/// when N would exceed `cap`.
int truncation_order(const ModelSpec& model, double radius, double tol, int cap = 1'000'000);

/// Truncation planned by `truncation_order` with its certified tail bound.
Truncation plan_truncation(const ModelSpec& model, double radius, double tol, int cap = 1'000'000);

/// Expected number of zeroes in a disk, (L / pi) * m*(disk), by quadrature.
double expected_zero_count(const ModelSpec& model, const Region& region);

struct ArgumentPrincipleCount {
  int count = 0;
  double integer_distance = 0.0;
  int nodes = 0;
};

/// (1 / 2 pi i) contour integral of psi'/psi over the disk boundary by the
/// trapezoid rule; nodes start at 64 * (expected + 1) and double until two
/// successive estimates agree to 0.02. Throws ConvergenceError when the raw
/// value stays farther than 0.1 from an integer (contour too close to a zero).
ArgumentPrincipleCount count_zeros_argument_principle(const GafSample& sample, const Region& region,
                                                      double expected_count = -1.0);

/// All L zeroes of an elliptic sample, Newton-polished and certified on a
/// circle enclosing every finite zero.
ZeroSet find_zeros_elliptic(const GafSample& sample, const ZeroFinderOptions& options = {});

/// All zeroes inside a disk region, Newton-polished and certified.
ZeroSet find_zeros_in_region(const GafSample& sample, const Region& region,
                             const ZeroFinderOptions& options = {});

}  // namespace caz
