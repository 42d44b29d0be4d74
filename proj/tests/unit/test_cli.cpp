#include <gtest/gtest.h>

#include "commands.hpp"

using namespace crsu2;
using namespace crsu2::cli;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Config, DefaultLambdaSet) {
  EXPECT_EQ(lambda_values(config("verify")), (std::vector<double>{0.5, 1.0, 2.0}));
}

TEST(Config, RangeIsInclusive) {
  RunConfig c = config("sweep");
  c.lambda_from = 0.5;
  c.lambda_to = 2.0;
  c.samples = 4;
  EXPECT_EQ(lambda_values(c), (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
}

TEST(Config, RejectsInvalidValues) {
  RunConfig c = config("verify");
  c.lambdas = {-1.0};
  EXPECT_THROW(run_command(c), ConfigError);
  c.lambdas = {0.0};
  EXPECT_THROW(run_command(c), ConfigError);
  c = config("transport");
  c.steps = 0;
  EXPECT_THROW(run_command(c), ConfigError);
  c = config("sweep");
  c.lambda_from = 0.5;
  c.lambda_to = 2.0;
  c.samples = 1;
  EXPECT_THROW(run_command(c), ConfigError);
  c.samples = 3;
  c.lambda_to.reset();
  EXPECT_THROW(run_command(c), ConfigError);
  EXPECT_THROW(run_command(config("bogus")), ConfigError);
}

TEST(Verify, PassesAtOneAndTwo) {
  for (double l : {1.0, 2.0}) {
    RunConfig c = config("verify");
    c.lambdas = {l};
    const CommandResult r = cmd_verify(c);
    EXPECT_TRUE(r.report.passed()) << (r.report.first_failure() ? r.report.first_failure()->name : "");
    EXPECT_GT(r.report.records.size(), 10u);
  }
}

TEST(Verify, TightToleranceFailsAndNamesRecord) {
  RunConfig c = config("verify");
  c.lambdas = {2.0};
  c.tol_scale = 1e-12;
  const CommandResult r = cmd_verify(c);
  EXPECT_FALSE(r.report.passed());
  ASSERT_NE(r.report.first_failure(), nullptr);
  EXPECT_FALSE(r.report.first_failure()->name.empty());
}

TEST(Curvature, JsonParsesAndHoldsObstruction) {
  RunConfig c = config("curvature");
  c.lambdas = {1.0, 2.0};
  c.format = Format::json;
  const CommandResult r = cmd_curvature(c);
  EXPECT_TRUE(r.report.passed());
  const auto j = nlohmann::json::parse(render(c, r));
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j["records"].is_array());
  EXPECT_TRUE(j["summary"]["pass"].get<bool>());
  const auto& at2 = j["data"]["curvature"][1];
  EXPECT_NEAR(at2["obstruction_magnitude"].get<double>(), 45.0 / (4.0 * std::sqrt(2.0)), 1e-12);
  // kappa(E_t, E_u) entry (1,2) is about 7.9550 i.
  const Complex e12 = complex_from_json(at2["pairs"][0]["brackets"][1][2]);
  EXPECT_NEAR(e12.imag(), 7.9550, 1e-4);
  EXPECT_LT(j["data"]["curvature"][0]["obstruction_magnitude"].get<double>(), 1e-12);
  const GMatrix m = g_matrix_from_json(at2["pairs"][0]["closed_form"]);
  EXPECT_NEAR(m(0, 1).imag(), 7.9550, 1e-4);
}

TEST(Sweep, CsvShapeAndValues) {
  RunConfig c = config("sweep");
  c.lambda_from = 0.5;
  c.lambda_to = 2.0;
  c.samples = 16;
  c.format = Format::csv;
  const CommandResult r = cmd_sweep(c);
  EXPECT_TRUE(r.report.passed());
  const std::string csv = render(c, r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,obstruction_magnitude,normality_residual");
  EXPECT_EQ(count_lines(csv), 17);
  EXPECT_EQ(csv, render(c, cmd_sweep(c)));
  EXPECT_NEAR(r.rows.back().obstruction_magnitude, 45.0 / (4.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_LT(r.rows.back().normality_residual, 1e-9);
}

TEST(Sweep, RowAtOneAndInversionPair) {
  RunConfig c = config("sweep");
  c.lambdas = {1.0, 2.0, 0.5, 3.0, 1.0 / 3.0};
  const CommandResult r = cmd_sweep(c);
  EXPECT_LT(r.rows[0].obstruction_magnitude, 1e-12);
  // The pair is related by obstruction(1/lambda) = obstruction(lambda) / lambda.
  EXPECT_NEAR(r.rows[2].obstruction_magnitude, r.rows[1].obstruction_magnitude / 2.0, 1e-12);
  EXPECT_NEAR(r.rows[4].obstruction_magnitude, r.rows[3].obstruction_magnitude / 3.0, 1e-12);
}

TEST(Solve, SeedIndependent) {
  RunConfig a = config("solve");
  a.lambdas = {1.0, 2.0};
  a.format = Format::json;
  RunConfig b = a;
  b.seed = 12345;
  const CommandResult ra = cmd_solve(a), rb = cmd_solve(b);
  EXPECT_TRUE(ra.report.passed());
  EXPECT_TRUE(rb.report.passed());
  for (int i = 0; i < 2; ++i) {
    const auto& ia = ra.data["solve"][i]["images"];
    const auto& ib = rb.data["solve"][i]["images"];
    for (int k = 0; k < 3; ++k)
      EXPECT_LT(max_abs(GMatrix(g_matrix_from_json(ia[k]) - g_matrix_from_json(ib[k]))), 1e-8);
  }
}

TEST(Solve, IterationCapFallsBackToStagedSolve) {
  RunConfig c = config("solve");
  c.lambdas = {2.0};
  c.max_iterations = 1;
  const CommandResult r = cmd_solve(c);
  ASSERT_EQ(r.data["solve"].size(), 1u);
  EXPECT_TRUE(r.report.passed());
  EXPECT_TRUE(r.data["solve"][0]["converged"].get<bool>());
}

TEST(Transport, ReportPasses) {
  RunConfig c = config("transport");
  c.lambdas = {0.5, 2.0};
  const CommandResult r = cmd_transport(c);
  EXPECT_TRUE(r.report.passed()) << (r.report.first_failure() ? r.report.first_failure()->name : "");
  EXPECT_EQ(r.report.records.size(), 6u);
}

TEST(Render, TextAndCsvAreDeterministic) {
  RunConfig c = config("transport");
  c.lambdas = {1.0};
  for (Format f : {Format::text, Format::csv, Format::json}) {
    c.format = f;
    EXPECT_EQ(render(c, cmd_transport(c)), render(c, cmd_transport(c)));
  }
}

TEST(Render, CsvFieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}
