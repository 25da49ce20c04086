#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/outer.hpp"

using namespace twopoint;

namespace {

std::vector<double> modulus_of(const oracle::Fn& f, int m) {
  std::vector<double> w(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) w[static_cast<size_t>(j)] = std::abs(f(oracle::node(j, m)));
  return w;
}

}  // namespace

TEST(Outer, ReproducesPositiveAtZeroOuterFunction) {
  // 1 - z/2 and 1/(1 - z^2/4) are outer with positive value at 0.
  for (const oracle::Fn& f : std::vector<oracle::Fn>{
           [](cplx z) { return 1.0 - 0.5 * z; },
           [](cplx z) { return 1.0 / (1.0 - 0.25 * z * z); },
           [](cplx z) { return std::exp(0.3 * z + 0.1 * z * z); }}) {
    const auto g = OuterFunction::from_modulus(modulus_of(f, 512));
    for (cplx z : {cplx(0), cplx(0.3, -0.4), cplx(-0.9, 0.1)}) {
      EXPECT_LT(std::abs(g(z) - f(z)), 1e-10) << z;
    }
    const auto bv = g.boundary_values();
    for (int j = 0; j < 512; j += 37) {
      EXPECT_LT(std::abs(bv[static_cast<size_t>(j)] - f(oracle::node(j, 512))), 1e-10);
    }
  }
}

TEST(Outer, ScalesWithModulus) {
  const auto w = modulus_of([](cplx z) { return 2.0 + z; }, 256);
  std::vector<double> w3(w);
  for (double& x : w3) x *= 3.0;
  const auto g = OuterFunction::from_modulus(w);
  const auto g3 = OuterFunction::from_modulus(w3);
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0)}) {
    EXPECT_LT(std::abs(g3(z) - 3.0 * g(z)), 1e-12);
  }
}

TEST(Outer, ProductOfModuliGivesProduct) {
  const auto w1 = modulus_of([](cplx z) { return 2.0 + z; }, 256);
  const auto w2 = modulus_of([](cplx z) { return 1.0 - 0.3 * z * z; }, 256);
  std::vector<double> w12(w1.size());
  for (size_t j = 0; j < w1.size(); ++j) w12[j] = w1[j] * w2[j];
  const cplx z{0.2, -0.3};
  EXPECT_LT(std::abs(OuterFunction::from_modulus(w12)(z) -
                     OuterFunction::from_modulus(w1)(z) * OuterFunction::from_modulus(w2)(z)),
            1e-12);
}

TEST(Outer, IsolatedZeroOfFiniteOrder) {
  // |1 - z| vanishes to first order at node 0; G = 1 - z.
  const int m = 1024;
  const auto w = modulus_of([](cplx z) { return 1.0 - z; }, m);
  ASSERT_EQ(w[0], 0.0);
  const auto g = OuterFunction::from_modulus(w);
  EXPECT_LT(std::abs(g(0.0) - 1.0), 1e-4);
  EXPECT_LT(std::abs(g(cplx(0.3, 0.3)) - (1.0 - cplx(0.3, 0.3))), 1e-3);
}

TEST(Outer, Rejections) {
  std::vector<double> w(256, 1.0);
  w[10] = w[11] = 0.0;
  EXPECT_THROW(OuterFunction::from_modulus(w), InvalidArgument);
  std::vector<double> neg(256, 1.0);
  neg[3] = -1.0;
  EXPECT_THROW(OuterFunction::from_modulus(neg), InvalidArgument);
  EXPECT_THROW(OuterFunction::from_modulus(std::vector<double>(100, 1.0)), InvalidArgument);
  const auto g = OuterFunction::from_modulus(std::vector<double>(64, 2.0));
  EXPECT_NEAR(std::abs(g(0.5) - 2.0), 0.0, 1e-14);
  EXPECT_THROW((void)g(0.97), InvalidArgument);
  EXPECT_THROW((void)g(0.5, 1.0), InvalidArgument);
  EXPECT_THROW(OuterFunction::from_log_modulus(std::vector<double>(64, INFINITY)),
               InvalidArgument);
}

TEST(Outer, FromSymbol) {
  const auto sym = sample_on_circle([](cplx z) { return std::abs(3.0 + z); }, 256);
  EXPECT_LT(std::abs(outer_from_modulus(sym, cplx(0.2, 0.1)) - (3.0 + cplx(0.2, 0.1))), 1e-12);
  EXPECT_THROW(outer_from_modulus(constant_symbol({1, 1}, 64), 0.0), InvalidArgument);
}
