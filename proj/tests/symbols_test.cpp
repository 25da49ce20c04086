#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/symbols.hpp"

using namespace twopoint;

TEST(Grid, SampleCountGuard) {
  EXPECT_TRUE(valid_sample_count(64));
  EXPECT_TRUE(valid_sample_count(4096));
  EXPECT_FALSE(valid_sample_count(32));
  EXPECT_FALSE(valid_sample_count(96));
  EXPECT_FALSE(valid_sample_count(0));
  EXPECT_THROW(constant_symbol(1.0, 100), InvalidArgument);
}

TEST(BoundarySymbol, Metadata) {
  const auto c = cosine_symbol(64);
  EXPECT_TRUE(c.real_valued());
  EXPECT_FALSE(c.analytic());
  EXPECT_EQ(c.description(), "coszeta");
  EXPECT_NEAR(c.sup_norm(), 1.0, 1e-15);
  EXPECT_FALSE(c.is_constant());
  EXPECT_TRUE(constant_symbol({2, 1}, 64).is_constant());
  EXPECT_FALSE(constant_symbol({2, 1}, 64).real_valued());
  EXPECT_TRUE(blaschke_symbol(DiskPair(0.5, -0.5), 64).analytic());
}

TEST(Quadrature, ExactForTrigPolynomials) {
  // (1/M) sum z^p conj(z^q) = [p == q] for |p - q| < M
  const int m = 64;
  for (int p = -5; p <= 5; ++p) {
    for (int q = -5; q <= 5; ++q) {
      const auto f = sample_on_circle([p](cplx z) { return std::pow(z, p); }, m);
      const auto g = sample_on_circle([q](cplx z) { return std::pow(z, q); }, m);
      EXPECT_NEAR(std::abs(boundary_inner_product(f, g) - (p == q ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(Quadrature, SzegoInnerProduct) {
  // <k_v, k_w> = 1 / (1 - conj(v) w) is reproduced to geometric accuracy.
  const cplx v{0.3, 0.4}, w{-0.5, 0.1};
  const int m = 256;
  const auto f = sample_on_circle([&](cplx z) { return oracle::szego(v, z); }, m);
  const auto g = sample_on_circle([&](cplx z) { return oracle::szego(w, z); }, m);
  EXPECT_NEAR(std::abs(boundary_inner_product(f, g) - oracle::szego(v, w)), 0.0, 1e-13);
  EXPECT_NEAR(boundary_norm(f.samples()), std::sqrt(1.0 / (1.0 - std::norm(v))), 1e-13);
}

TEST(Fourier, CosineCoefficients) {
  const auto c = fourier_coefficients(cosine_symbol(128), -3, 3);
  EXPECT_NEAR(std::abs(c.at(1) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.at(-1) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.at(0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.at(3)), 0.0, 1e-15);
  EXPECT_THROW(fourier_coefficients(cosine_symbol(64), -20, 20), InvalidArgument);
}

TEST(Fourier, SzegoTaylorCoefficients) {
  const cplx w{0.2, -0.5};
  const auto f = sample_on_circle([&](cplx z) { return oracle::szego(w, z); }, 512);
  const auto c = fourier_coefficients(f, -4, 10);
  for (int n = 0; n <= 10; ++n) {
    EXPECT_NEAR(std::abs(c.at(n) - std::pow(std::conj(w), n)), 0.0, 1e-14);
  }
  for (int n = -4; n < 0; ++n) EXPECT_NEAR(std::abs(c.at(n)), 0.0, 1e-14);
}

TEST(BoundarySymbol, RejectsMismatchedInner) {
  EXPECT_THROW(boundary_inner_product(cosine_symbol(64), cosine_symbol(128)), InvalidArgument);
}
