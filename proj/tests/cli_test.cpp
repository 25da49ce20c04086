#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "twopoint/io.hpp"

namespace fs = std::filesystem;
using twopoint::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("twopoint_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ToeplitzExample) {
  const auto out = (dir_ / "A.csv").string();
  const auto r = call({"toeplitz", "--a", "0.5,0", "--b", "-0.5,0", "--t", "1,0", "--symbol",
                       "blaschke", "--N", "8", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(out);
  const Eigen::MatrixXcd a = twopoint::read_truncation_csv(f);
  EXPECT_EQ(a.rows(), 8);
  EXPECT_LT(std::abs(a(0, 0)), 1e-14);
  const auto meta = nlohmann::json::parse(slurp(dir_ / "A.json"));
  EXPECT_EQ(meta["N"], 8);
  EXPECT_EQ(meta["M"], 1024);
  EXPECT_EQ(meta["schema_version"], 1);
}

TEST_F(CliTest, DeterministicOutput) {
  const std::vector<std::string> base{"portrait", "--symbol", "coszeta", "--N", "16",
                                      "--steps-re", "5", "--steps-im", "4"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1", "--out", (dir_ / "p1.csv").string()});
  b.insert(b.end(), {"--threads", "3", "--out", (dir_ / "p2.csv").string()});
  ASSERT_EQ(call(a).code, 0);
  ASSERT_EQ(call(b).code, 0);
  EXPECT_EQ(slurp(dir_ / "p1.csv"), slurp(dir_ / "p2.csv"));
  EXPECT_EQ(slurp(dir_ / "p1.csv").substr(0, 30), "re_lambda,im_lambda,sigma_min\n");
}

TEST_F(CliTest, EigenExample) {
  const auto r = call({"relspec", "eigen", "--a", "0.5,0", "--b", "-0.5,0", "--symbol", "coszeta",
                       "--c", "0.6667,0", "--beta", "0", "--lambda", "0", "--N", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["s"][0].get<double>(), 1.0, 1e-8);
  EXPECT_LE(j["residual"].get<double>(), 1e-6);
  EXPECT_EQ(j["G_coeffs"].size(), 32u);
}

TEST_F(CliTest, PredictStep) {
  const auto r = call({"relspec", "predict", "--symbol", "step:1,-1,1,0", "--c", "1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["interval"][0], -1.0);
  EXPECT_EQ(j["interval"][1], 1.0);
  EXPECT_EQ(j["endpoint_flags"][0], false);
}

TEST_F(CliTest, NumericFailuresExitOne) {
  auto r = call({"relspec", "eigen", "--symbol", "step:1,-1,1,0", "--c", "1,0", "--lambda",
                 "1.25", "--N", "32"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sign"), std::string::npos);
  r = call({"relspec", "eigen", "--symbol", "step:1,-1,1,0", "--c", "1,0", "--lambda", "1",
            "--N", "32"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("integrability"), std::string::npos);
  r = call({"toeplitz", "--t", "0.6,0", "--symbol", "coszeta", "--N", "8"});
  EXPECT_EQ(r.code, 1);
  r = call({"relspec", "predict", "--symbol", "step:1,0.5,1,0", "--c", "1,0"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, ArgumentErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"nonsense"}).code, 2);
  EXPECT_EQ(call({"toeplitz", "--symbol", "coszeta"}).code, 2);               // no --N
  EXPECT_EQ(call({"toeplitz", "--symbol", "coszeta", "--N", "8", "--M", "1000"}).code, 2);
  EXPECT_EQ(call({"toeplitz", "--symbol", "nope", "--N", "8"}).code, 2);
  EXPECT_EQ(call({"toeplitz", "--a", "0.5", "--symbol", "coszeta", "--N", "8"}).code, 2);
  EXPECT_EQ(call({"toeplitz", "--a", "0.5,0", "--b", "0.5,0", "--symbol", "coszeta", "--N", "8"})
                .code,
            2);
  EXPECT_EQ(call({"kernel", "--w", "1.5,0", "--z", "0,0"}).code, 2);
  EXPECT_EQ(call({"relspec", "predict", "--symbol", "coszeta", "--c", "0,0"}).code, 2);
  EXPECT_EQ(call({"berezin", "--t", "inf", "--symbol", "coszeta"}).code, 2);
  EXPECT_EQ(call({"toeplitz", "--symbol", "csv:/nonexistent/x.csv", "--N", "8"}).code, 2);
}

TEST_F(CliTest, CsvSymbolInput) {
  const auto path = dir_ / "phi.csv";
  {
    std::ofstream f(path);
    twopoint::write_symbol_csv(f, twopoint::cosine_symbol(1024));
  }
  const auto a = call({"berezin", "--symbol", "csv:" + path.string()});
  const auto b = call({"berezin", "--symbol", "coszeta"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  EXPECT_EQ(ja["value"], jb["value"]);
  EXPECT_EQ(call({"berezin", "--symbol", "csv:" + path.string(), "--M", "2048"}).code, 2);
}

TEST_F(CliTest, KernelAndAnnihilator) {
  auto r = call({"kernel", "--w", "0.5,0", "--z", "0.5,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"][0].get<double>(), 16.0 / 15.0, 1e-14);
  r = call({"annihilator", "--symbol", "coszeta", "--n-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["conj_witness"].get<double>(), 0.125, 1e-12);
}

TEST_F(CliTest, VerifyPasses) {
  const auto out = (dir_ / "verify.json").string();
  const auto r = call({"verify", "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name") && c.contains("measured") && c.contains("bound"));
  }
}
