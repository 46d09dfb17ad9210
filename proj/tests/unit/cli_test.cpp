#ifdef CVLAB_HAVE_CLI

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cvlab/cli.hpp"
#include "cvlab/manifest.hpp"
#include "cvlab/sim_config.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cvlab::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cvlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "sim.cfg";
    std::ofstream(p) << text;
    return p;
  }
  fs::path dir_;
};

}  // namespace

TEST(Cli, Exact) {
  const CliRun r = invoke({"exact", "--n", "12", "--k", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cov=95/4096\n"), std::string::npos);
  EXPECT_NE(r.out.find("mse=223/6144\n"), std::string::npos);
  EXPECT_NE(r.out.find("mse_holdout=1/48\n"), std::string::npos);
  EXPECT_NE(invoke({"exact", "--n", "6", "--k", "2"}).out.find("mse=7/96"), std::string::npos);
  EXPECT_NE(invoke({"exact", "--n", "12", "--m", "4"}).out.find("cov=95/4096"), std::string::npos);
}

TEST(Cli, ExactLogMode) {
  const CliRun r = invoke({"exact", "--n", "100000", "--k", "10", "--mode", "log"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mode=log"), std::string::npos);
  EXPECT_EQ(invoke({"exact", "--n", "100000", "--k", "10"}).code, 0);
}

TEST(Cli, InvalidInputExitsTwo) {
  const CliRun r = invoke({"exact", "--n", "7", "--k", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("k must divide n"), std::string::npos);
  EXPECT_EQ(invoke({"exact", "--n", "8", "--k", "2", "--m", "4"}).code, 2);
  EXPECT_EQ(invoke({"exact", "--n", "5000", "--k", "2", "--mode", "rational"}).code, 2);
  EXPECT_EQ(invoke({"exact", "--n", "8", "--k", "2", "--mode", "float"}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, Help) { EXPECT_EQ(invoke({"--help"}).code, 0); }

TEST(Cli, SweepToStdout) {
  const CliRun r = invoke({"sweep", "--n", "720"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 30);  // header + 29 rows
  const std::string two = invoke({"sweep", "--n", "2"}).out;
  EXPECT_EQ(std::count(two.begin(), two.end(), '\n'), 2);
}

TEST_F(CliFiles, SweepWritesCsvAndManifest) {
  const fs::path out = dir_ / "sweep.csv";
  const CliRun r = invoke({"sweep", "--n", "6", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(out);
  EXPECT_EQ(csv,
            "n,k,m,cov_exact,mse_exact,cov_leading,rel_err_leading,mse_holdout\n"
            "6,2,3,1/16,7/96,0.0649747334361,-0.0380876273786,1/24\n"
            "6,3,2,3/64,7/96,0.0649747334361,-0.278565720534,1/24\n"
            "6,6,1,3/32,23/192,,,1/24\n");
  const auto manifest = nlohmann::json::parse(slurp(cvlab::cli::manifest_path(out)));
  EXPECT_EQ(manifest["command"], "sweep");
  EXPECT_EQ(manifest["parameters"]["n"], "6");
  EXPECT_EQ(manifest["parameters"]["mode"], "rational");
  EXPECT_EQ(manifest["version"], cvlab::cli::tool_version());
  EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 16u);
  EXPECT_TRUE(manifest.contains("timestamp"));
  EXPECT_FALSE(manifest.contains("seed"));

  // byte-stable reruns
  const fs::path again = dir_ / "again.csv";
  ASSERT_EQ(invoke({"sweep", "--n", "6", "--out", again.string()}).code, 0);
  EXPECT_EQ(slurp(again), csv);
}

TEST_F(CliFiles, SimulateAppendsRows) {
  const fs::path cfg = write_config("# majority on fair coins\nn = 12\nk = 3\nalgo = majority\ntrials = 20000\nseed = 7\n");
  const fs::path out = dir_ / "sim.csv";
  ASSERT_EQ(invoke({"simulate", cfg.string(), "--out", out.string()}).code, 0);
  ASSERT_EQ(invoke({"simulate", cfg.string(), "--out", out.string(), "--seed", "8"}).code, 0);
  std::istringstream lines(slurp(out));
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "config_hash,mean,std_error,trials,seed");
  EXPECT_EQ(first.substr(0, 16), second.substr(0, 16));
  EXPECT_NE(first.find(",20000,7"), std::string::npos);
  EXPECT_NE(second.find(",20000,8"), std::string::npos);

  std::istringstream fields(first);
  std::string hash, mean, se;
  std::getline(fields, hash, ',');
  std::getline(fields, mean, ',');
  std::getline(fields, se, ',');
  EXPECT_LE(std::abs(std::stod(mean) - 446.0 / 12288), 3 * std::stod(se));

  const auto manifest = nlohmann::json::parse(slurp(cvlab::cli::manifest_path(out)));
  EXPECT_EQ(manifest["seed"], 8);
  EXPECT_EQ(manifest["command"], "simulate");
  EXPECT_EQ(manifest["config_hash"], hash);
  EXPECT_TRUE(manifest.contains("generator"));
}

TEST_F(CliFiles, SimulateIsDeterministic) {
  const fs::path cfg = write_config("n=10\nk=5\nalgo=constant\nq=0.5\ntrials=5000\n");
  const CliRun a = invoke({"simulate", cfg.string(), "--seed", "3"});
  const CliRun b = invoke({"simulate", cfg.string(), "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliFiles, SimulateAnticorr) {
  const fs::path cfg = write_config("n=8\nk=4\nalgo=anticorr\ntrials=1000\n");
  const CliRun r = invoke({"simulate", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",0,0,1000,0"), std::string::npos) << r.out;
}

TEST_F(CliFiles, SimulateRejectsBadConfig) {
  EXPECT_EQ(invoke({"simulate", write_config("n=7\nk=2\n").string()}).code, 2);
  EXPECT_EQ(invoke({"simulate", write_config("n=8\nk=2\ncolour=red\n").string()}).code, 2);
  EXPECT_EQ(invoke({"simulate", write_config("n=8\nk=2\nalgo=anticorr\ndata=point_mass\n").string()}).code, 2);
  EXPECT_EQ(invoke({"simulate", write_config("n=8\nk=2\ntrials=10\n").string()}).code, 2);
  EXPECT_EQ(invoke({"simulate", write_config("n=eight\nk=2\n").string()}).code, 2);
  EXPECT_EQ(invoke({"simulate", (dir_ / "missing.cfg").string()}).code, 2);
}

TEST(SimConfig, CanonicalHashIgnoresSeedAndSpacing) {
  std::istringstream a("n=12\nk=3\nseed=1\n");
  std::istringstream b("  k = 3 # folds\n n = 12\nseed = 99\nalgo = majority\n");
  const auto ca = cvlab::cli::SimConfig::parse(a);
  const auto cb = cvlab::cli::SimConfig::parse(b);
  EXPECT_EQ(cvlab::cli::config_hash(ca.canonical()), cvlab::cli::config_hash(cb.canonical()));
  EXPECT_NE(ca.seed, cb.seed);
}

TEST(Manifest, Fnv1a) {
  EXPECT_EQ(cvlab::cli::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(cvlab::cli::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST_F(CliFiles, AsymptoticAndExactOutputs) {
  const CliRun r = invoke({"asymptotic", "--n", "3000", "--m", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cov_leading="), std::string::npos);
  EXPECT_NE(r.out.find("cov_sublinear="), std::string::npos);
  EXPECT_EQ(invoke({"asymptotic", "--n", "12", "--k", "5"}).code, 2);

  const fs::path out = dir_ / "exact.csv";
  ASSERT_EQ(invoke({"exact", "--n", "12", "--k", "3", "--out", out.string()}).code, 0);
  EXPECT_EQ(slurp(out), "n,k,m,mode,cov,mse,mse_holdout\n12,3,4,rational,95/4096,223/6144,1/48\n");
  EXPECT_TRUE(fs::exists(cvlab::cli::manifest_path(out)));
}

TEST(Cli, VerifyExactSuite) {
  const CliRun r = invoke({"verify", "--suite", "exact"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
  EXPECT_NE(r.out.find("4/4 passed"), std::string::npos);
}

#endif
