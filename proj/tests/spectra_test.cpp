#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/spectra.hpp"

using namespace twopoint;

TEST(SigmaMin, DiagonalMatrix) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
  a.diagonal() << 1.0, cplx(0, 2), -3.0;
  EXPECT_NEAR(sigma_min(a, 0.0), 1.0, 1e-14);
  EXPECT_NEAR(sigma_min(a, cplx(0, 1.5)), 0.5, 1e-14);
  EXPECT_NEAR(operator_norm(a), 3.0, 1e-14);
  EXPECT_THROW(sigma_min(Eigen::MatrixXcd(2, 3), 0.0), InvalidArgument);
}

TEST(SigmaMin, LipschitzInLambda) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(12, 12);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
  for (int k = 0; k < 30; ++k) {
    const cplx l1{g(rng), g(rng)}, l2{g(rng), g(rng)};
    EXPECT_LE(std::abs(sigma_min(a, l1) - sigma_min(a, l2)), std::abs(l1 - l2) + 1e-12);
  }
}

TEST(Eigenvalues, TriangularDefectiveIsExact) {
  // Jordan block: plain QR would spread the eigenvalue by eps^(1/n).
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) a(i, i) = -0.25;
  for (int i = 0; i < 5; ++i) a(i, i + 1) = 1.0;
  const auto r = eigenvalues(a);
  ASSERT_EQ(r.values.size(), 6u);
  for (cplx v : r.values) EXPECT_LT(std::abs(v + 0.25), 1e-15);
  EXPECT_EQ(r.isolated, 6);
}

TEST(Eigenvalues, GeneralMatrixBackwardStable) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(20, 20);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
  const auto r = eigenvalues(a);
  ASSERT_TRUE(r.converged);
  ASSERT_EQ(r.values.size(), 20u);
  cplx trace{};
  for (cplx v : r.values) {
    EXPECT_LT(sigma_min(a, v), 1e-12 * a.norm());
    trace += v;
  }
  EXPECT_LT(std::abs(trace - a.trace()), 1e-11 * a.norm());
}

TEST(Eigenvalues, SizeGuard) {
  EXPECT_THROW(eigenvalues(Eigen::MatrixXcd::Identity(513, 513)), InvalidArgument);
  EXPECT_THROW(eigenvalues(Eigen::MatrixXcd(0, 0)), InvalidArgument);
}

TEST(Portrait, LayoutAndThreadIndependence) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
  a.diagonal() << 0.0, 1.0, cplx(0, 1), -1.0;
  const auto p1 = portrait(a, {1, 1}, {-1, -1}, 5, 3, 1);
  const auto p4 = portrait(a, {-1, -1}, {1, 1}, 5, 3, 4);
  EXPECT_EQ(p1.values, p4.values);
  EXPECT_EQ(p1.lower, cplx(-1, -1));
  EXPECT_EQ(p1.point(4, 2), cplx(1, 1));
  EXPECT_EQ(p1.point(2, 1), cplx(0, 0));
  EXPECT_NEAR(p1.at(2, 1), 0.0, 1e-15);
  EXPECT_NEAR(p1.at(4, 1), 0.0, 1e-15);  // lambda = 1
  EXPECT_THROW(portrait(a, 0.0, 1.0, 1, 3), InvalidArgument);
}

TEST(SpectrumCheck, BlaschkeSymbolPasses) {
  const DiskPair p(0.5, -0.5);
  const auto phi = blaschke_symbol(p, 1024);
  const auto r = analytic_spectrum_check(p, ExtendedParameter::finite(1), phi,
                                         {eval_blaschke_pair(p, 0.3)}, {cplx(1.5, 0), cplx(0, -2)},
                                         {16, 32, 64});
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.failures().empty());
  ASSERT_EQ(r.probes.size(), 3u);
  for (const auto& pr : r.probes) EXPECT_EQ(pr.sigma.size(), 3u);
}

TEST(SpectrumCheck, Preconditions) {
  const DiskPair p(0.5, -0.5);
  const auto t = ExtendedParameter::finite(1);
  const auto b = blaschke_symbol(p, 1024);
  EXPECT_THROW(analytic_spectrum_check(p, t, cosine_symbol(1024), {}, {}, {16}), InvalidArgument);
  EXPECT_THROW(analytic_spectrum_check(p, t, sample_on_circle([](cplx) { return cplx(1); }, 1024,
                                                              "one", true),
                                       {}, {}, {16}),
               InvalidArgument);
  EXPECT_THROW(analytic_spectrum_check(p, t, b, {}, {}, {32, 16}), InvalidArgument);
  EXPECT_THROW(analytic_spectrum_check(p, t, b, {}, {cplx(0.1)}, {16}), InvalidArgument);
}

TEST(SpectrumCheck, HullBoundForCosine) {
  const DiskPair p({0.3, 0.2}, {0, -0.4});
  const auto a = truncate(p, ExtendedParameter::finite({2, 1}), cosine_symbol(1024), 48);
  for (cplx l : {cplx(0, 0.5), cplx(1.5, 0.2), cplx(-2, -1)}) {
    EXPECT_GE(sigma_min(a, l), oracle::segment_distance(l, -1, 1) - 1e-10);
  }
}
