#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "powersph/harness/cli.hpp"
#include "powersph/harness/grid.hpp"
#include "powersph/harness/stability.hpp"

using namespace powersph::harness;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Grid, DefaultsEncodeExperimentGrids) {
  const auto g = parse_grid(kStabilityGrid);
  ASSERT_EQ(g.size(), 54u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 9e5);
  EXPECT_EQ(g[9], 10.0);
  const auto t = parse_grid(kTimingKappaGrid);
  ASSERT_EQ(t.size(), 25u);
  EXPECT_EQ(t.back(), 5e4);
  EXPECT_EQ(parse_grid("3e2"), std::vector<double>{300.0});
  EXPECT_EQ(parse_grid("1..3 x 10^2"), (std::vector<double>{100.0, 200.0, 300.0}));
  EXPECT_EQ(parse_grid("5.5, 0,2"), (std::vector<double>{0.0, 2.0, 5.5}));
  EXPECT_EQ(parse_grid("7x10^{-1..0}"), (std::vector<double>{0.7, 7.0}));
}

TEST(Grid, MalformedSpecsAreUsageErrors) {
  for (const char* bad : {"", "abc", "1..x10^2", "1..9 x 10^{0..5", "5..1 x 10^0", "1 x 5^2",
                          "1,,2", "-1,2", "1..9 x 10^{0..5}z"}) {
    EXPECT_THROW(parse_grid(bad), UsageError) << bad;
  }
}

TEST(Cli, GoldenHeaders) {
  auto s = run({"stability-sweep", "--d-grid", "2,3", "--kappa-grid", "0,1"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(lines(s.out).front(), "d,kappa,ps_stable,vmf_stable,failure_kind");
  EXPECT_EQ(lines(s.out).size(), 5u);

  auto t = run({"bench-timing", "--kappa-grid", "1,10", "--trials", "2", "--reps", "2", "--batch", "5"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(lines(t.out).front(), "dist,kappa,mean_ms,std_ms,trials,reps,mean_rejections");
  EXPECT_EQ(lines(t.out).size(), 5u);

  auto v = run({"mc-verify", "--cell", "3:2", "--n", "20000", "--n-gradient", "2000"});
  EXPECT_EQ(lines(v.out).front(), "quantity,d,kappa,kappa_q,closed_form,mc_estimate,mc_se,pass");
}

TEST(Cli, StabilityTrivialCellStable) {
  auto s = run({"stability-sweep", "--d-grid", "3", "--kappa-grid", "0"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(lines(s.out).at(1), "3,0,true,true,none");
}

TEST(Cli, StabilityIndependentOfThreads) {
  const std::vector<std::size_t> ds{2, 7, 40};
  const std::vector<double> ks{0.0, 3.0, 9e5};
  const auto a = run_stability_sweep(ds, ks, 10, 5, 1);
  const auto b = run_stability_sweep(ds, ks, 10, 5, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].d, b[i].d);
    EXPECT_EQ(a[i].kappa, b[i].kappa);
    EXPECT_EQ(a[i].ps_stable, b[i].ps_stable);
    EXPECT_EQ(a[i].vmf_stable, b[i].vmf_stable);
    EXPECT_TRUE(a[i].ps_stable);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"stability-sweep", "--d-grid", "1..9 x 10^{0..5"}).code, kExitUsage);
  EXPECT_EQ(run({"stability-sweep", "--d-grid", "2.5"}).code, kExitUsage);
  EXPECT_EQ(run({"bench-timing", "--batch", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"sample", "--d", "3", "--kappa", "1", "--n", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"sample", "--d", "1", "--kappa", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"sample", "--d", "3", "--kappa", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"sample", "--d", "3", "--kappa", "1", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"mc-verify", "--cell", "3"}).code, kExitUsage);
  // Three samples cannot pin down fifteen covariance entries to 3 SE.
  auto v = run({"mc-verify", "--cell", "5:7", "--n", "3", "--n-gradient", "3"});
  EXPECT_EQ(v.code, kExitVerificationFailure);
  EXPECT_NE(v.out.find("false"), std::string::npos);
  EXPECT_NE(v.err.find("FAIL"), std::string::npos);
}

TEST(Cli, SampleIsDeterministicAndUnitNorm) {
  const std::vector<std::string> args{"--seed", "7", "sample", "--d", "3", "--kappa", "2", "--n", "3"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"--seed", "8", "sample", "--d", "3", "--kappa", "2", "--n", "3"}).out);
  // Global flags are also accepted after the subcommand.
  EXPECT_EQ(a.out, run({"sample", "--d", "3", "--kappa", "2", "--n", "3", "--seed", "7"}).out);

  const auto rows = lines(run({"sample", "--d", "4", "--kappa", "5", "--n", "200", "--mu", "1,1,1,1"}).out);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.front(), "t,x0,x1,x2,x3");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    double sq = 0.0;
    double dot = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double x = std::stod(f[k]);
      sq += x * x;
      dot += 0.5 * x;
    }
    EXPECT_NEAR(std::sqrt(sq), 1.0, 1e-10);
    EXPECT_NEAR(dot, std::stod(f[0]), 1e-10);
  }
}

TEST(Cli, SampleCircleAngleUniform) {
  const auto rows = lines(run({"sample", "--d", "2", "--kappa", "0", "--n", "100000"}).out);
  std::vector<double> angles;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    double a = std::atan2(std::stod(f[2]), std::stod(f[1]));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    angles.push_back(a);
  }
  ASSERT_EQ(angles.size(), 100000u);
  const double ks = powersph::testing::ks_statistic(
      angles, [](double a) { return a / (2.0 * std::numbers::pi); });
  EXPECT_GT(powersph::testing::ks_pvalue(ks, angles.size()), 0.01);
}

TEST(Cli, SampleJsonlAndVmf) {
  const auto r = run({"--format", "jsonl", "sample", "--d", "3", "--kappa", "4", "--n", "2",
                      "--dist", "vmf", "--gradient"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].rfind("{\"t\":", 0), 0u);
  EXPECT_NE(rows[0].find("\"dot_grad_kappa\":"), std::string::npos);
}

TEST(Cli, LogProbRows) {
  const auto u = run({"logprob", "--d", "3", "--kappa", "0"}, "1 0 0\n0,0.6,0.8\n");
  ASSERT_EQ(u.code, 0);
  const auto rows = lines(u.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "row,log_prob,error");
  for (int i = 1; i <= 2; ++i) {
    EXPECT_NEAR(std::stod(fields(rows[i])[1]), -std::log(4.0 * std::numbers::pi), 1e-14);
  }
  const auto p = run({"logprob", "--d", "3", "--kappa", "2", "--vmf"}, "1,0,0\n");
  ASSERT_EQ(p.code, 0);
  const auto f = fields(lines(p.out).at(1));
  EXPECT_NEAR(std::stod(f[1]), 2.0 * std::log(2.0) - std::log(16.0 * std::numbers::pi / 3.0), 1e-14);
  EXPECT_NEAR(std::stod(f[2]), 2.0 - std::log(4.0 * std::numbers::pi * std::sinh(2.0) / 2.0), 1e-13);
}

TEST(Cli, LogProbErrorRecords) {
  const auto r = run({"logprob", "--d", "3", "--kappa", "1"}, "1,0,0\n1,abc,0\n0.5,0.5,0\n1,0\n");
  EXPECT_EQ(r.code, kExitVerificationFailure);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_TRUE(fields(rows[1]).back().empty());
  for (int i = 2; i <= 4; ++i) {
    const auto f = fields(rows[i]);
    EXPECT_EQ(f[0], std::to_string(i - 1));
    EXPECT_TRUE(f[1].empty());
    EXPECT_FALSE(f.back().empty());
  }
  EXPECT_NE(r.err.find("row 1"), std::string::npos);
}

TEST(Cli, KlCommand) {
  const auto r = run({"kl", "--d", "3", "--kappa", "0", "--kappa-q", "0"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "quantity,value");
  EXPECT_NEAR(std::stod(fields(rows[2])[1]), 0.0, 1e-9);
  EXPECT_NEAR(std::stod(fields(rows[3])[1]), 0.0, 1e-9);
}

TEST(Cli, OutFileOption) {
  const std::string path = ::testing::TempDir() + "powersph_out.csv";
  const auto r = run({"--out", path, "sample", "--d", "2", "--kappa", "1", "--n", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(lines(ss.str()).size(), 3u);
  std::remove(path.c_str());
  EXPECT_EQ(run({"--out", "/nonexistent/dir/x.csv", "sample", "--d", "2", "--kappa", "1"}).code,
            kExitUsage);
}

TEST(Cli, VerifyExampleRows) {
  const auto r = run({"mc-verify", "--cell", "3:2", "--cell", "3:0", "--n", "200000",
                      "--n-gradient", "20000"});
  const auto rows = lines(r.out);
  bool saw_mean = false;
  bool saw_kl_uniform = false;
  int kl_vmf_rows = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    if (f[0] == "mean" && f[2] == "2") {
      EXPECT_EQ(std::stod(f[4]), 0.5);
      saw_mean = true;
    }
    if (f[0] == "kl_uniform" && f[2] == "0") {
      EXPECT_NEAR(std::stod(f[4]), 0.0, 1e-12);
      saw_kl_uniform = true;
    }
    if (f[0] == "kl_vmf") ++kl_vmf_rows;
  }
  EXPECT_TRUE(saw_mean);
  EXPECT_TRUE(saw_kl_uniform);
  EXPECT_EQ(kl_vmf_rows, 8);  // 2 cells x 2 kappa_q x {aligned, anti-aligned}
}
