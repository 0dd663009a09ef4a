#include "caz/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caz/quadrature.hpp"
#include "caz/roots.hpp"

namespace caz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxContourNodes = 1 << 22;

nlohmann::json complex_pair(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

// |w(z)| and |psi'(z)| / ||psi(z)||, safe against overflow of z^N.
std::pair<double, double> field_magnitudes(const ModelSpec& model, std::span<const Complex> coeffs,
                                           Complex z) {
  const double az = std::abs(z);
  if (az <= 1.0) {
    const HornerValue h = horner(coeffs, z);
    const double n = norm_psi(model, z);
    return {std::abs(h.value) / n, std::abs(h.derivative) / n};
  }
  const Complex w = 1.0 / z;
  const HornerValue q = horner_reversed(coeffs, w);
  const double degree = static_cast<double>(coeffs.size() - 1);
  const double scale = std::exp(degree * std::log(az) - log_norm_psi(model, z));
  return {std::abs(q.value) * scale, std::abs(degree * q.value - w * q.derivative) / az * scale};
}

Complex polish(std::span<const Complex> coeffs, Complex z) {
  for (int iter = 0; iter < 30; ++iter) {
    bool converged = false;
    const Complex step = newton_correction(coeffs, z, &converged);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    z -= step;
    if (converged || std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

double fujiwara_bound(std::span<const Complex> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  const double lead = std::abs(coeffs.back());
  double bound = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double ratio = std::abs(coeffs[static_cast<std::size_t>(n - k)]) / lead;
    if (ratio == 0.0) continue;
    double term = std::pow(ratio, 1.0 / k);
    if (k == n) term = std::pow(0.5 * ratio, 1.0 / k);
    bound = std::max(bound, term);
  }
  return 2.0 * bound;
}

void require_degree_nondegenerate(const GafSample& sample) {
  const auto coeffs = sample.coefficients();
  double largest = 0.0;
  for (const Complex& c : coeffs) largest = std::max(largest, std::abs(c));
  if (std::abs(coeffs.back()) <= 1e-13 * largest) {
    throw DegenerateSampleError("elliptic leading coefficient vanishes numerically (zero at infinity)");
  }
}

std::vector<Complex> polished_roots(const GafSample& sample) {
  const auto coeffs = sample.coefficients();
  PolynomialRoots found = aberth_roots(coeffs);
  for (Complex& z : found.roots) z = polish(coeffs, z);
  return found.roots;
}

// Merge roots closer than merge_fraction * local spacing; fills zeros,
// multiplicities and residuals of `out`.
void merge_and_measure(const GafSample& sample, std::vector<Complex> roots, double merge_fraction,
                       ZeroSet& out) {
  const ModelSpec& model = sample.model();
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int multiplicity = 1;
    const double threshold = merge_fraction * local_spacing(model, roots[i]);
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < threshold) {
        used[j] = true;
        sum += roots[j];
        ++multiplicity;
      }
    }
    const Complex z = sum / static_cast<double>(multiplicity);
    const auto [w, dw] = field_magnitudes(model, sample.coefficients(), z);
    out.zeros.push_back(z);
    out.multiplicities.push_back(multiplicity);
    out.residuals.push_back(w / std::max(1.0, dw * local_spacing(model, z)));
  }
}

void require_region_evaluable(const GafSample& sample, const Region& region) {
  if (region.kind == RegionKind::FullSphere) {
    if (sample.model().family() != Family::Elliptic) {
      throw DomainError("full-sphere region is only defined for the elliptic family");
    }
    return;
  }
  if (!(region.radius > 0.0)) throw std::invalid_argument("region radius must be positive");
  const double reach = std::abs(region.center) + region.radius;
  if (sample.model().family() == Family::Hyperbolic && reach >= 1.0) {
    throw DomainError("hyperbolic region must lie inside the unit disk");
  }
  if (const auto& t = sample.truncation(); t && reach > t->radius * (1.0 + 1e-12)) {
    throw DomainError("region exceeds the certified truncation radius");
  }
}

}  // namespace

Region Region::disk(Complex center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("region radius must be positive");
  return Region{center, radius, RegionKind::Disk};
}

Region Region::full_sphere() { return Region{0.0, std::numeric_limits<double>::infinity(), RegionKind::FullSphere}; }

bool Region::contains(Complex z) const {
  return kind == RegionKind::FullSphere || std::abs(z - center) < radius;
}

nlohmann::json Region::to_json() const {
  if (kind == RegionKind::FullSphere) return {{"kind", "full_sphere"}};
  return {{"kind", "disk"}, {"center", complex_pair(center)}, {"radius", radius}};
}

int ZeroSet::count() const {
  int total = 0;
  for (int m : multiplicities) total += m;
  return total;
}

double ZeroSet::residual_max() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

nlohmann::json ZeroSet::to_json() const {
  nlohmann::json zs = nlohmann::json::array();
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (int m = 0; m < multiplicities[i]; ++m) zs.push_back(complex_pair(zeros[i]));
  }
  return {{"region", region.to_json()},
          {"count", count()},
          {"zeros", zs},
          {"residual_max", residual_max()},
          {"certified", certified()},
          {"argument_principle_count", certificate.argument_principle_count}};
}

CertificateError::CertificateError(int found, int counted)
    : std::runtime_error("zero count certificate mismatch: found " + std::to_string(found) +
                         ", argument principle " + std::to_string(counted)),
      found_(found),
      counted_(counted) {}

int truncation_order(const ModelSpec& model, double radius, double tol, int cap) {
  if (model.family() == Family::Elliptic) {
    throw std::invalid_argument("elliptic samples are exact; no truncation order");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  if (model.family() == Family::Hyperbolic && radius >= 1.0) {
    throw DomainError("hyperbolic truncation radius must be below 1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("truncation tolerance must be positive");
  auto ok = [&](int n) { return truncation_tail(model, n, radius) < tol; };
  if (ok(0)) return 0;
  // Exponential search, then bisection on the monotone tail.
  int lo = 0;
  int hi = 1;
  while (!ok(hi)) {
    lo = hi;
    if (hi >= cap) throw CapExceeded("truncation order would exceed the cap of " + std::to_string(cap));
    hi = std::min(cap, 2 * hi);
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

Truncation plan_truncation(const ModelSpec& model, double radius, double tol, int cap) {
  return make_truncation(model, truncation_order(model, radius, tol, cap), radius);
}

double expected_zero_count(const ModelSpec& model, const Region& region) {
  const double L = model.intensity();
  if (region.kind == RegionKind::FullSphere) return L;
  if (model.family() == Family::Flat) return L * region.radius * region.radius;
  const double mass = integrate_disk_fixed(
      [&](Complex z) { return invariant_measure_density(model, z); }, region.center, region.radius, 32, 64);
  return L / kPi * mass;
}

namespace {

// (1/n) sum (psi'/psi)(z_k) (z_k - c) over equispaced contour nodes, with
// doubling; no domain checks (the contour may be a jittered one).
ArgumentPrincipleCount contour_count(std::span<const Complex> coeffs, Complex center, double radius,
                                     double expected_count) {
  auto node_sum = [&](int n, int start, int stride) {
    Complex sum = 0.0;
    for (int k = start; k < n; k += stride) {
      const Complex z = center + std::polar(radius, 2.0 * kPi * k / n);
      const Complex correction = newton_correction(coeffs, z);
      if (correction == 0.0) throw ConvergenceError("argument principle: contour passes through a zero");
      sum += (z - center) / correction;
    }
    return sum;
  };
  const double seed_count = std::min(1e5, std::ceil(std::max(expected_count, 0.0)));
  int n = 64 * (static_cast<int>(seed_count) + 1);
  Complex sum = node_sum(n, 0, 1);
  Complex estimate = sum / static_cast<double>(n);
  while (true) {
    if (2 * n > kMaxContourNodes) {
      throw ConvergenceError("argument principle did not converge (contour too close to a zero)");
    }
    sum += node_sum(2 * n, 1, 2);
    n *= 2;
    const Complex next = sum / static_cast<double>(n);
    const bool settled = std::abs(next - estimate) < 0.02;
    estimate = next;
    if (settled) break;
  }
  const double nearest = std::round(estimate.real());
  const double distance = std::abs(estimate - Complex{nearest, 0.0});
  if (distance > 0.1) {
    throw ConvergenceError("argument principle value " + std::to_string(estimate.real()) +
                           " is not near an integer (contour too close to a zero)");
  }
  return ArgumentPrincipleCount{static_cast<int>(nearest), distance, n};
}

}  // namespace

ArgumentPrincipleCount count_zeros_argument_principle(const GafSample& sample, const Region& region,
                                                      double expected_count) {
  require_region_evaluable(sample, region);
  const auto coeffs = sample.coefficients();
  if (expected_count < 0.0) expected_count = expected_zero_count(sample.model(), region);
  if (region.kind == RegionKind::FullSphere) {
    require_degree_nondegenerate(sample);
    // Fujiwara's bound encloses every finite zero.
    double radius = 1.1 * fujiwara_bound(coeffs);
    if (!(radius > 0.0)) radius = 1.0;
    return contour_count(coeffs, 0.0, radius, expected_count);
  }
  return contour_count(coeffs, region.center, region.radius, expected_count);
}

ZeroSet find_zeros_elliptic(const GafSample& sample, const ZeroFinderOptions& options) {
  if (sample.model().family() != Family::Elliptic) {
    throw std::invalid_argument("find_zeros_elliptic needs an elliptic sample");
  }
  require_degree_nondegenerate(sample);
  ZeroSet out;
  out.region = Region::full_sphere();
  merge_and_measure(sample, polished_roots(sample), options.merge_fraction, out);
  const int L = sample.model().degree();
  const ArgumentPrincipleCount ap = count_zeros_argument_principle(sample, out.region, L);
  out.certificate = Certificate{ap.count, ap.count == out.count() && out.count() == L, ap.integer_distance,
                                ap.nodes};
  if (!out.certificate.matches) throw CertificateError(out.count(), ap.count);
  return out;
}

ZeroSet find_zeros_in_region(const GafSample& sample, const Region& region, const ZeroFinderOptions& options) {
  if (region.kind == RegionKind::FullSphere) return find_zeros_elliptic(sample, options);
  require_region_evaluable(sample, region);
  if (sample.model().family() == Family::Elliptic) require_degree_nondegenerate(sample);

  const double delta = options.boundary_fraction * region.radius;
  const double expected = expected_zero_count(sample.model(), region);
  std::vector<Complex> roots;
  {
    // Only roots near the region matter; polishing far-away spurious roots
    // of a truncated series is wasted work.
    const auto coeffs = sample.coefficients();
    PolynomialRoots found = aberth_roots(coeffs);
    const double reach = region.radius * 1.25 + 10.0 * delta * (options.max_retries + 1);
    for (Complex z : found.roots) {
      if (std::abs(z - region.center) < reach) roots.push_back(polish(coeffs, z));
    }
  }

  double radius = region.radius;
  int last_found = -1;
  int last_counted = -1;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt, radius += 10.0 * delta) {
    if (sample.model().family() == Family::Hyperbolic && std::abs(region.center) + radius >= 1.0) break;
    bool near_boundary = false;
    std::vector<Complex> inside;
    for (Complex z : roots) {
      const double d = std::abs(z - region.center);
      if (std::abs(d - radius) < delta) near_boundary = true;
      if (d < radius) inside.push_back(z);
    }
    if (near_boundary) continue;

    ZeroSet out;
    out.region = Region{region.center, radius, RegionKind::Disk};
    merge_and_measure(sample, inside, options.merge_fraction, out);
    last_found = out.count();
    ArgumentPrincipleCount ap;
    try {
      ap = contour_count(sample.coefficients(), region.center, radius, std::max<double>(expected, last_found));
    } catch (const ConvergenceError&) {
      continue;
    }
    last_counted = ap.count;
    out.certificate = Certificate{ap.count, ap.count == out.count(), ap.integer_distance, ap.nodes};
    if (out.certificate.matches) return out;
  }
  throw CertificateError(last_found, last_counted);
}

}  // namespace caz
