#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "caz/rng.hpp"
#include "caz/roots.hpp"

using namespace caz;

namespace {

// Smallest distance from z to any of the targets.
double nearest(const std::vector<Complex>& targets, Complex z) {
  double best = INFINITY;
  for (const Complex& t : targets) best = std::min(best, std::abs(t - z));
  return best;
}

}  // namespace

TEST(Horner, ValueDerivativeAndReversed) {
  const std::vector<Complex> c = {{1, 0}, {-2, 1}, {0, 3}};  // 1 + (-2+i) z + 3i z^2
  const Complex z{0.4, -0.7};
  const HornerValue h = horner(c, z);
  EXPECT_NEAR(std::abs(h.value - (c[0] + c[1] * z + c[2] * z * z)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.derivative - (c[1] + 2.0 * c[2] * z)), 0.0, 1e-15);
  const HornerValue r = horner_reversed(c, 1.0 / z);
  EXPECT_NEAR(std::abs(h.value - z * z * r.value), 0.0, 1e-14);
}

TEST(Roots, QuadraticFormula) {
  // z^2 + 1 -> +-i ; z^2 - 1/4 -> +-1/2.
  const auto a = aberth_roots(std::vector<Complex>{{1, 0}, {0, 0}, {1, 0}}).roots;
  ASSERT_EQ(a.size(), 2u);
  EXPECT_LT(nearest(a, {0, 1}), 1e-14);
  EXPECT_LT(nearest(a, {0, -1}), 1e-14);
  const auto b = aberth_roots(std::vector<Complex>{{-0.25, 0}, {0, 0}, {1, 0}}).roots;
  EXPECT_LT(nearest(b, {0.5, 0}), 1e-14);
  EXPECT_LT(nearest(b, {-0.5, 0}), 1e-14);
}

TEST(Roots, ZerosAtOriginAndTrailingZeros) {
  // z^2 (z - 2) with an exact zero padding coefficient on top.
  const std::vector<Complex> c = {{0, 0}, {0, 0}, {-2, 0}, {1, 0}, {0, 0}};
  const auto r = aberth_roots(c).roots;
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(std::count(r.begin(), r.end(), Complex(0, 0)), 2);
  EXPECT_LT(nearest(r, {2, 0}), 1e-13);
}

TEST(Roots, AberthAgreesWithCompanion) {
  ComplexGaussianStream s(99, 0);
  std::vector<Complex> c(40);
  for (auto& x : c) x = s.next();
  const auto a = aberth_roots(c);
  const auto e = companion_roots(c);
  ASSERT_EQ(a.roots.size(), 39u);
  ASSERT_EQ(e.size(), 39u);
  for (const Complex& z : a.roots) EXPECT_LT(nearest(e, z), 1e-8 * std::max(1.0, std::abs(z)));
  EXPECT_FALSE(a.used_companion_fallback);
}

TEST(Roots, KnownRootsOfUnityScaled) {
  // z^n - R^n: roots on |z| = R, across very different magnitudes.
  for (double R : {1e-3, 1.0, 50.0}) {
    const int n = 12;
    std::vector<Complex> c(n + 1, 0.0);
    c[0] = -std::pow(R, n);
    c[n] = 1.0;
    const auto r = aberth_roots(c).roots;
    for (int k = 0; k < n; ++k) EXPECT_LT(nearest(r, std::polar(R, 2.0 * 3.141592653589793 * k / n)), 1e-12 * R);
  }
}

TEST(Roots, NewtonPolygonRadii) {
  // Coefficients 1, 1e-8 z, z^2 ... the hull puts radii from |c0/c2|^{1/2}.
  const std::vector<Complex> c = {{1e4, 0}, {0, 0}, {1, 0}};
  for (const Complex& z : newton_polygon_start(c)) EXPECT_NEAR(std::abs(z), 100.0, 1e-9);
}

TEST(Roots, NewtonCorrection) {
  const std::vector<Complex> c = {{-1, 0}, {0, 0}, {1, 0}};
  const Complex z{3.0, 0.0};
  EXPECT_NEAR(std::abs(newton_correction(c, z) - Complex(8.0 / 6.0, 0.0)), 0.0, 1e-14);
  const Complex far{1e200, 0.0};  // reversed path, no overflow
  EXPECT_NEAR(std::abs(newton_correction(c, far) - far / 2.0) / 1e200, 0.0, 1e-14);
}
