#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gsol/pipeline.hpp"

using namespace gsol;

namespace {

RunConfig config(const std::string& name) { return load_config(std::string(GSOL_CONFIG_DIR) + "/" + name); }

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

int run_cli(const std::string& args) {
  const std::string cli = GSOL_CLI;
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Pipeline, CommandNames) {
  for (const char* name : {"validate", "classify", "build", "balance", "verify", "kasner", "holonomy", "wick", "sample"}) {
    const auto c = parse_command(name);
    ASSERT_TRUE(c.has_value()) << name;
    EXPECT_EQ(command_name(*c), name);
  }
  EXPECT_FALSE(parse_command("solve").has_value());
}

TEST(Pipeline, VerifyTwoFamilySoliton) {
  const PipelineResult r = run_pipeline(config("n2_equal.cfg"), Command::verify);
  EXPECT_EQ(r.exit, ExitCode::success) << r.report;
  EXPECT_FALSE(contains(r.report, "FAIL"));
  for (const char* key : {"sum_identity", "harmonicity", "integrability", "path_gap", "alpha_period_shift", "max_defect",
                          "max_spread", "lapse", "ricci", "flux_enclosed", "flux_cross", "holonomy_rank"}) {
    EXPECT_TRUE(contains(r.report, std::string(key) + ".status: pass")) << key;
  }
}

TEST(Pipeline, VerifyIsDeterministicAcrossThreads) {
  const RunConfig c = config("e1e2e1e3.cfg");
  const PipelineResult a = run_pipeline(c, Command::verify, {.threads = 1});
  const PipelineResult b = run_pipeline(c, Command::verify, {.threads = 1});
  const PipelineResult t = run_pipeline(c, Command::verify, {.threads = 4});
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.report, t.report);
  EXPECT_EQ(a.exit, ExitCode::success) << a.report;
}

TEST(Pipeline, SampleGrid) {
  const RunConfig c = config("sample_grid.cfg");
  const PipelineResult a = run_pipeline(c, Command::sample, {.threads = 1});
  const PipelineResult b = run_pipeline(c, Command::sample, {.threads = 3});
  EXPECT_EQ(a.csv, b.csv);
  std::istringstream in(a.csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "rho,z,u1,u2,alpha,lapse");
  int rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
    ++rows;
  }
  EXPECT_EQ(rows, 30);
  // rho is the outer loop: the first row is (rho_min, z_min)
  EXPECT_EQ(first.substr(0, first.find(',', first.find(',') + 1)), "2.00000000000e-01,0.00000000000e+00");
}

TEST(Pipeline, Classify) {
  const PipelineResult r = run_pipeline(config("n3_basic.cfg"), Command::classify);
  EXPECT_TRUE(contains(r.report, "label: S⁵ \\ (B²×T³)")) << r.report;
  const PipelineResult q = run_pipeline(config("e1e2e1e3e4.cfg"), Command::classify);
  EXPECT_TRUE(contains(q.report, "label: [(S²×S⁴) # 2(S³×S³)] \\ (B²×T⁴)")) << q.report;
}

TEST(Pipeline, WickSecondFamily) {
  const PipelineResult r = run_pipeline(config("n2_equal.cfg"), Command::wick, {.wick_family = 2});
  EXPECT_EQ(r.exit, ExitCode::success) << r.report;
  EXPECT_TRUE(contains(r.report, "horizon.1.topology: S²"));
  EXPECT_THROW(run_pipeline(config("n2_equal.cfg"), Command::wick, {.wick_family = 3}), InputError);
}

TEST(Pipeline, KasnerAndHolonomy) {
  const PipelineResult k = run_pipeline(config("n2_equal.cfg"), Command::kasner);
  EXPECT_EQ(k.exit, ExitCode::success) << k.report;
  EXPECT_TRUE(contains(k.report, "p.z: -3.33333333333e-01"));
  const PipelineResult h = run_pipeline(config("n3_basic.cfg"), Command::holonomy);
  EXPECT_EQ(h.exit, ExitCode::success);
  EXPECT_TRUE(contains(h.report, "rank: 10"));
}

TEST(Pipeline, BuildAndBalanceUnequal) {
  const PipelineResult b = run_pipeline(config("unequal.cfg"), Command::build);
  EXPECT_EQ(b.exit, ExitCode::success);
  EXPECT_TRUE(contains(b.report, "permutation: 1 3 2"));
  const PipelineResult c = run_pipeline(config("unequal.cfg"), Command::balance);
  EXPECT_EQ(c.exit, ExitCode::success) << c.report;
}

TEST(Pipeline, InvalidDiagram) {
  const RunConfig c = config("invalid_gcd.cfg");
  const PipelineResult v = run_pipeline(c, Command::validate);
  EXPECT_EQ(v.exit, ExitCode::check_failure);
  EXPECT_TRUE(contains(v.report, "structure-gcd"));
  try {
    run_pipeline(c, Command::build);
    FAIL() << "expected an InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(exit_code_for(e), ExitCode::input_error);
  }
}

TEST(Pipeline, ExitCodes) {
  EXPECT_EQ(exit_code_for(InputError("x")), ExitCode::input_error);
  EXPECT_EQ(exit_code_for(DomainError("x")), ExitCode::input_error);
  EXPECT_EQ(exit_code_for(SingularPointError("x")), ExitCode::input_error);
  EXPECT_EQ(exit_code_for(AccuracyError("x")), ExitCode::accuracy_failure);
  EXPECT_EQ(exit_code_for(UnbalanceableError("x")), ExitCode::check_failure);
}

TEST(Pipeline, TightToleranceFailsTheCheck) {
  RunConfig c = config("n2_equal.cfg");
  c.tol.ricci = 1e-12;
  const PipelineResult r = run_pipeline(c, Command::verify);
  EXPECT_EQ(r.exit, ExitCode::check_failure);
  EXPECT_TRUE(contains(r.report, "ricci.status: FAIL"));
}

TEST(Cli, ExitStatus) {
  if (std::string(GSOL_CLI).empty()) GTEST_SKIP() << "command-line tool not built";
  const std::string dir = GSOL_CONFIG_DIR;
  EXPECT_EQ(run_cli("validate " + dir + "/n2_equal.cfg"), 0);
  EXPECT_EQ(run_cli("validate " + dir + "/invalid_gcd.cfg"), 1);
  EXPECT_EQ(run_cli("build " + dir + "/invalid_gcd.cfg"), 2);
  EXPECT_EQ(run_cli("solve " + dir + "/n2_equal.cfg"), 2);
  EXPECT_EQ(run_cli("verify /nonexistent.cfg"), 2);
  EXPECT_EQ(run_cli("wick " + dir + "/n2_equal.cfg --family 2"), 0);
}
