#include <gtest/gtest.h>

#include <cmath>

#include "caz/rng.hpp"

using namespace caz;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(GaussianStream, PureFunctionOfSeedStreamDraw) {
  ComplexGaussianStream a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) a.next();
  b.seek(a.position());
  EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(ComplexGaussianStream(7, 3).next(), c.next());
}

TEST(GaussianStream, Moments) {
  ComplexGaussianStream s(11, 0);
  const int n = 200000;
  double m2 = 0.0, m4 = 0.0, re2 = 0.0, cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = s.next();
    const double a = std::norm(z);
    m2 += a;
    m4 += a * a;
    re2 += z.real() * z.real();
    cross += z.real() * z.imag();
  }
  // |z|^2 ~ Exp(1): E = 1, E^2 = 2.
  EXPECT_NEAR(m2 / n, 1.0, 5 * std::sqrt(1.0 / n));
  EXPECT_NEAR(m4 / n, 2.0, 5 * std::sqrt(20.0 / n));
  EXPECT_NEAR(re2 / n, 0.5, 5 * std::sqrt(0.5 / n));
  EXPECT_NEAR(cross / n, 0.0, 5 * std::sqrt(0.25 / n));
}

TEST(GaussianStream, UniformOpenInterval) {
  ComplexGaussianStream s(1, 1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 5 * std::sqrt(1.0 / 12 / 100000));
}
