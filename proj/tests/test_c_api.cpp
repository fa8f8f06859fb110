#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "gchoi/gchoi.h"

namespace {

struct CliRun {
  std::string out;
  int status = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(GCHOI_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(GCHOI_TEST_DATA) + "/" + name; }

gchoi_config single_thread() {
  gchoi_config cfg = gchoi_config_default();
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(CApi, Defaults) {
  const gchoi_config cfg = gchoi_config_default();
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.starts, 64);
  EXPECT_EQ(cfg.max_iterations, 2000);
  EXPECT_DOUBLE_EQ(cfg.step_tolerance, 1e-12);
  EXPECT_DOUBLE_EQ(cfg.violation_tolerance, 1e-9);
  EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-9);
  EXPECT_STREQ(gchoi_version(), "0.1.0");
}

TEST(CApi, MatrixErrors) {
  gchoi_matrix* m = reinterpret_cast<gchoi_matrix*>(1);
  const double neg[] = {1.0, -1.0, 0.0, 1.0};
  EXPECT_EQ(gchoi_matrix_create(2, neg, &m), GCHOI_INVALID_INPUT);
  EXPECT_EQ(m, nullptr);
  EXPECT_STRNE(gchoi_last_error(), "");
  EXPECT_EQ(gchoi_matrix_create(2, nullptr, &m), GCHOI_INVALID_INPUT);
  EXPECT_EQ(gchoi_matrix_create(2, neg, nullptr), GCHOI_INVALID_INPUT);
  EXPECT_EQ(gchoi_matrix_load("/nonexistent.json", &m), GCHOI_INVALID_INPUT);
  EXPECT_EQ(gchoi_matrix_dim(nullptr), 0u);
  gchoi_matrix_destroy(nullptr);
  gchoi_report_destroy(nullptr);
}

TEST(CApi, AnalyzeChoi) {
  const double a[] = {1, 0, 1, 1, 1, 0, 0, 1, 1};
  gchoi_matrix* m = nullptr;
  ASSERT_EQ(gchoi_matrix_create(3, a, &m), GCHOI_OK);
  EXPECT_EQ(gchoi_matrix_dim(m), 3u);
  const gchoi_config cfg = single_thread();
  gchoi_report* r = nullptr;
  ASSERT_EQ(gchoi_analyze(m, &cfg, &r), GCHOI_OK);
  const uint32_t s = gchoi_report_summary(r);
  EXPECT_TRUE(s & GCHOI_POSITIVE_PROVEN);
  EXPECT_TRUE(s & GCHOI_INDECOMPOSABLE_PROVEN);
  EXPECT_FALSE(s & GCHOI_INCONCLUSIVE);
  EXPECT_EQ(gchoi_report_has_witness(r), 1);
  EXPECT_EQ(gchoi_report_has_violation(r), 0);
  EXPECT_NE(std::string(gchoi_report_json(r)).find("\"ppt_witness\""), std::string::npos);
  EXPECT_NE(std::string(gchoi_report_text(r)).find("PPT witness"), std::string::npos);
  gchoi_report_destroy(r);
  gchoi_matrix_destroy(m);
}

TEST(CApi, SearchAndProbeFromFile) {
  gchoi_matrix* m = nullptr;
  ASSERT_EQ(gchoi_matrix_load(data("ckl_half.json").c_str(), &m), GCHOI_OK);
  const gchoi_config cfg = single_thread();
  gchoi_report* r = nullptr;
  ASSERT_EQ(gchoi_search(m, &cfg, &r), GCHOI_OK);
  EXPECT_EQ(gchoi_report_has_violation(r), 1);
  EXPECT_TRUE(gchoi_report_summary(r) & GCHOI_NOT_POSITIVE_PROVEN);
  gchoi_report_destroy(r);
  gchoi_matrix_destroy(m);

  ASSERT_EQ(gchoi_matrix_load(data("all_ones.json").c_str(), &m), GCHOI_OK);
  ASSERT_EQ(gchoi_probe(m, nullptr, &r), GCHOI_OK);
  EXPECT_EQ(gchoi_report_has_witness(r), 0);
  gchoi_report_destroy(r);
  gchoi_matrix_destroy(m);
}

TEST(CApi, BadConfig) {
  const double a[] = {1, 1, 1, 1};
  gchoi_matrix* m = nullptr;
  ASSERT_EQ(gchoi_matrix_create(2, a, &m), GCHOI_OK);
  gchoi_config cfg = single_thread();
  cfg.starts = 0;
  gchoi_report* r = nullptr;
  EXPECT_EQ(gchoi_analyze(m, &cfg, &r), GCHOI_INVALID_INPUT);
  EXPECT_EQ(r, nullptr);
  EXPECT_EQ(gchoi_analyze(nullptr, &cfg, &r), GCHOI_INVALID_INPUT);
  gchoi_matrix_destroy(m);
}

TEST(CApi, Reproduce) {
  const gchoi_config cfg = single_thread();
  gchoi_report* r = nullptr;
  ASSERT_EQ(gchoi_reproduce("example5", nullptr, 0, &cfg, &r), GCHOI_OK);
  EXPECT_EQ(std::string(gchoi_report_text(r)).rfind("det = -1.000000000", 0), 0u);
  gchoi_report_destroy(r);

  const double a[] = {0.5, 1.0, 2.0};
  ASSERT_EQ(gchoi_reproduce("boundary", a, 3, &cfg, &r), GCHOI_OK);
  EXPECT_EQ(std::string(gchoi_report_text(r)).rfind("D_formula = -1.000000000, D_numeric = -1.000000000", 0), 0u);
  gchoi_report_destroy(r);

  EXPECT_EQ(gchoi_reproduce("unknown", nullptr, 0, &cfg, &r), GCHOI_INVALID_INPUT);
  EXPECT_EQ(gchoi_reproduce("boundary", nullptr, 3, &cfg, &r), GCHOI_INVALID_INPUT);
}

TEST(Cli, AnalyzeIsByteIdentical) {
  const std::string args = "analyze -i " + data("choi.json");
  const CliRun first = run_cli(args);
  ASSERT_EQ(first.status, 0);
  EXPECT_EQ(run_cli(args).out, first.out);
  EXPECT_EQ(run_cli(args + " --threads 1").out, first.out);
  EXPECT_EQ(run_cli(args + " --threads 4").out, first.out);
  EXPECT_NE(first.out.find("\"indecomposable_proven\""), std::string::npos);
}

TEST(Cli, SeedIsEchoed) {
  const CliRun r = run_cli("analyze -i " + data("all_ones.json") + " --seed 7 --starts 5");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"seed\": 7"), std::string::npos);
  EXPECT_NE(r.out.find("\"starts\": 5"), std::string::npos);
}

TEST(Cli, TextFormat) {
  const CliRun r = run_cli("analyze -i " + data("example5.json") + " --format text");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pairwise_necessary(1,2)"), std::string::npos);
  EXPECT_NE(r.out.find("not_positive_proven"), std::string::npos);
}

TEST(Cli, Reproduce) {
  const CliRun ex5 = run_cli("reproduce example5");
  ASSERT_EQ(ex5.status, 0);
  EXPECT_EQ(ex5.out.rfind("det = -1.000000000\n", 0), 0u);
  const CliRun b = run_cli("reproduce boundary --a 1 1 1");
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(b.out.rfind("D_formula = 0.000000000, D_numeric = 0.000000000\nPhi_A positive", 0), 0u);
  const CliRun k = run_cli("reproduce kye-boundary --c 2 1 1 --format json");
  ASSERT_EQ(k.status, 0);
  EXPECT_NE(k.out.find("\"c_product\": 2.0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("analyze -i /nonexistent.json").status, 1);
  EXPECT_EQ(run_cli("reproduce nothing").status, 1);
  EXPECT_EQ(run_cli("analyze").status, 1);
  EXPECT_EQ(run_cli("analyze -i " + data("choi.json") + " --tol -1").status, 1);
  EXPECT_EQ(run_cli("reproduce choi --a 1 2 3").status, 1);
  EXPECT_EQ(run_cli("--help").status, 0);
}
