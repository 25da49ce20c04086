#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "twopoint/errors.hpp"
#include "twopoint/io.hpp"

using namespace twopoint;

TEST(Io, FormatNumberRoundTrips) {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Io, SymbolCsvRoundTrip) {
  const auto phi = sample_symbol([](double th) { return std::polar(1.0 + th, th / 3); }, 64);
  std::stringstream ss;
  write_symbol_csv(ss, phi);
  EXPECT_EQ(ss.str().substr(0, 12), "theta,re,im\n");
  const auto back = read_symbol_csv(ss, "x");
  ASSERT_EQ(back.size(), 64);
  for (int j = 0; j < 64; ++j) EXPECT_EQ(back[j], phi[j]);
}

TEST(Io, SymbolCsvRejectsBadInput) {
  std::stringstream no_header("0,1,0\n");
  EXPECT_THROW(read_symbol_csv(no_header), InvalidArgument);
  std::stringstream short_file("theta,re,im\n0,1,0\n");
  EXPECT_THROW(read_symbol_csv(short_file), InvalidArgument);
  std::stringstream garbage;
  garbage << "theta,re,im\n";
  for (int j = 0; j < 64; ++j) garbage << node_angle(j, 64) << ",x,0\n";
  EXPECT_THROW(read_symbol_csv(garbage), InvalidArgument);
  std::stringstream shuffled;
  shuffled << "theta,re,im\n";
  for (int j = 63; j >= 0; --j) shuffled << format_number(node_angle(j, 64)) << ",1,0\n";
  EXPECT_THROW(read_symbol_csv(shuffled), InvalidArgument);
}

TEST(Io, TruncationCsvRoundTrip) {
  Eigen::MatrixXcd a(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) a(j, k) = {j + 0.1 * k, -1.0 / (1 + j + k)};
  std::stringstream ss;
  write_truncation_csv(ss, a);
  EXPECT_EQ(ss.str().substr(0, 10), "j,k,re,im\n");
  EXPECT_EQ(read_truncation_csv(ss), a);
  std::stringstream partial("j,k,re,im\n0,0,1,0\n1,1,1,0\n");
  EXPECT_THROW(read_truncation_csv(partial), InvalidArgument);
}

TEST(Io, MetaJson) {
  TruncationMeta m{DiskPair(0.5, -0.5), ExtendedParameter::infinity(), 8, 1024, "coszeta"};
  const auto j = nlohmann::json::parse(truncation_meta_json(m));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["t"], "inf");
  EXPECT_EQ(j["a"][0], 0.5);
  EXPECT_EQ(j["N"], 8);
  EXPECT_EQ(j["M"], 1024);
  EXPECT_EQ(j["symbol"], "coszeta");
  m.t = ExtendedParameter::finite({2, 1});
  EXPECT_EQ(nlohmann::json::parse(truncation_meta_json(m))["t"][1], 1.0);
}

TEST(Io, PortraitCsvRowMajor) {
  SpectralPortrait p;
  p.lower = {0, 0};
  p.upper = {1, 2};
  p.steps_re = 2;
  p.steps_im = 3;
  p.values = {0, 1, 2, 3, 4, 5};
  std::stringstream ss;
  write_portrait_csv(ss, p);
  EXPECT_EQ(ss.str(), "re_lambda,im_lambda,sigma_min\n0,0,0\n1,0,1\n0,1,2\n1,1,3\n0,2,4\n1,2,5\n");
}

TEST(Io, PredictionJson) {
  IntervalPrediction p;
  p.a = 0.5;
  p.b = -0.5;
  p.c = 1.0;
  p.m = -1;
  p.m_sup = 1;
  p.interval = {-1, 1};
  p.nonempty = true;
  const auto j = nlohmann::json::parse(to_json(p));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["M"], 1.0);
  EXPECT_EQ(j["interval"][0], -1.0);
  EXPECT_TRUE(j["degenerate_point"].is_null());
  EXPECT_EQ(j["endpoint_flags"].size(), 2u);
  p.degenerate_point = 0.25;
  EXPECT_EQ(nlohmann::json::parse(to_json(p))["degenerate_point"], 0.25);
}

TEST(Io, EigenpairJson) {
  OuterEigenpair e;
  e.lambda = 0.5;
  e.s = {1.5, 0};
  e.residual = 1e-7;
  e.g_coeffs.coefficients = Eigen::VectorXcd::Constant(3, cplx(1, -1));
  const auto j = nlohmann::json::parse(to_json(e));
  EXPECT_EQ(j["lambda"], 0.5);
  EXPECT_EQ(j["s"][0], 1.5);
  ASSERT_EQ(j["G_coeffs"].size(), 3u);
  EXPECT_EQ(j["G_coeffs"][2][1], -1.0);
}
