#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "caz/wick.hpp"

using namespace caz;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

// c_{2a} = (-1)^a / 2 * int log(x) L_a(x) e^{-x} dx, with
// int log(x) x^k e^{-x} dx = k! digamma(k + 1) and digamma(k + 1) = H_k - gamma.
// The alternating binomial sum loses ~a digits, hence 50-digit arithmetic.
double coefficient_oracle(int a) {
  const Dec gamma = boost::math::constants::euler<Dec>();
  Dec sum = 0, binom = 1, harmonic = 0;
  for (int k = 0; k <= a; ++k) {
    if (k > 0) {
      binom = binom * (a - k + 1) / k;
      harmonic += Dec(1) / k;
    }
    const Dec term = binom * (harmonic - gamma);
    sum += (k % 2 == 0) ? term : Dec(-term);
  }
  const Dec c = sum / 2;
  return static_cast<double>(a % 2 == 0 ? c : Dec(-c));
}

}  // namespace

TEST(Wick, CoefficientsAgainstAlternatingSumOracle) {
  const auto c = wick_log_coeffs(40);
  for (int a = 0; a <= 40; ++a) EXPECT_NEAR(c[static_cast<std::size_t>(a)], coefficient_oracle(a), 1e-13) << a;
}

TEST(Wick, SingleCoefficientMatchesTable) {
  const auto c = wick_log_coeffs(12);
  for (int a : {0, 1, 7, 12}) EXPECT_NEAR(wick_log_coeff(a), c[static_cast<std::size_t>(a)], 1e-14);
}

TEST(Wick, LargeOrderStaysAccurate) {
  // The oracle shows c_{2a} = (-1)^{a+1} / (2a) for every a >= 1.
  const auto c = cached_wick_coeffs(2048);
  for (int a : {100, 1000, 2048}) {
    const double pattern = (a % 2 == 1 ? 1.0 : -1.0) / (2.0 * a);
    EXPECT_NEAR((*c)[static_cast<std::size_t>(a)], pattern, 1e-12) << a;
  }
}

TEST(Wick, MeanAndVarianceOfLogModulus) {
  EXPECT_NEAR(mean_log_abs(), -std::numbers::egamma / 2.0, 1e-13);
  EXPECT_NEAR(log_abs_variance(), std::numbers::pi * std::numbers::pi / 24.0, 1e-12);
}

TEST(Wick, ParsevalReproducesVariance) {
  const ParsevalResult p = parseval_sum(4096);
  EXPECT_NEAR(p.extrapolated, log_abs_variance(), 1e-10);
  // The raw partial sum converges only like 1 / (4A).
  EXPECT_NEAR(log_abs_variance() - p.partial_sum, 1.0 / (4.0 * 4096), 1e-6);
}

TEST(Wick, Kappa) {
  const KappaResult k = kappa();
  // With the coefficient pattern above, kappa = zeta(3) / (16 pi).
  const double zeta3 = 1.2020569031595942854;
  EXPECT_NEAR(k.value, zeta3 / (16.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(k.value, k.partial_sum + k.tail_estimate, 1e-15);
  EXPECT_NEAR(k.value, kappa(1e-13).value, 1e-12);
  EXPECT_NEAR(kappa_partial(k.terms), k.partial_sum, 1e-14);
  EXPECT_LT(k.last_increment, 1e-12);
}
