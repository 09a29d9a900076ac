#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "csv_io.hpp"
#include "expr.hpp"
#include "fracinv/error.hpp"
#include "fracinv/inverse1.hpp"
#include "fracinv/inverse2.hpp"
#include "fracinv/verify.hpp"
#include "problem_file.hpp"
#include "svg_plot.hpp"

using namespace fracinv;
using namespace fracinv::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fracinv_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kProblem1 = R"J({
  "problem": "space_degenerate", "alpha": 0.6, "T": 1.0,
  "data": {"v": "0", "w": "1 + (3*x^2 - 1)"},
  "truncation": 8, "grid": {"t_points": 6, "x_points": 9}
})J";

const char* kProblem2 = R"J({
  "problem": "time_degenerate", "alpha": 0.5, "beta": 0.5, "T": 1.0,
  "data": {"phi": "0", "psi": "sin(pi*x)"},
  "truncation": 4, "grid": {"t_points": 5, "x_points": 7}
})J";

int solve(const fs::path& in, const fs::path& out) {
  std::ostringstream o, e;
  SolveOptions opt;
  opt.input = in.string();
  opt.output_dir = out.string();
  opt.threads = 3;
  return cmd_solve(opt, o, e);
}

}  // namespace

TEST(Expr, Evaluates) {
  EXPECT_EQ(parse_expression("1 + (3*x^2 - 1)")(0.5), 1.0 + (3 * 0.25 - 1.0));
  EXPECT_NEAR(parse_expression("sin(2*pi*x)")(0.25), 1.0, 1e-16);
  EXPECT_EQ(parse_expression("-x^3 + 2/4")(2.0), -7.5);
  EXPECT_EQ(parse_expression("--x")(3.0), 3.0);
  EXPECT_EQ(parse_expression("t^2", "t")(3.0), 9.0);
  EXPECT_EQ(parse_expression("1.5e1")(0.0), 15.0);
  EXPECT_EQ(parse_expression("x^0")(0.0), 1.0);
}

TEST(Expr, RejectsMalformedInput) {
  for (const char* bad : {"", "x +", "(x", "x)", "cos(x)", "x^-1", "x^1.5", "2 x", "t"}) {
    EXPECT_THROW(parse_expression(bad), ParseError) << bad;
  }
}

TEST(Csv, RoundTripIsBitExact) {
  const fs::path dir = scratch_dir("csv");
  Table t{{"a", "b"}, {{0.1, -1e-300}, {M_PI, 1.0 / 3.0}, {-0.0, 5e-324}}};
  write_csv((dir / "t.csv").string(), t);
  const Table r = read_csv((dir / "t.csv").string());
  EXPECT_EQ(r.header, t.header);
  ASSERT_EQ(r.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(std::signbit(r.rows[i][j]), std::signbit(t.rows[i][j]));
      EXPECT_EQ(r.rows[i][j], t.rows[i][j]);
    }
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  write_file(dir / "bad.csv", "a,b\n1,2,3\n");
  EXPECT_THROW(read_csv((dir / "bad.csv").string()), std::runtime_error);
}

TEST(ProblemFile, ParsesAndBuildsGrids) {
  const ProblemFile p = parse_problem(nlohmann::json::parse(kProblem1));
  EXPECT_EQ(p.kind, ProblemKind::SpaceDegenerate);
  EXPECT_EQ(p.truncation, 8);
  const auto xs = p.x_grid();
  ASSERT_EQ(xs.size(), 9u);
  EXPECT_EQ(xs.front(), -1.0);
  EXPECT_EQ(xs.back(), 1.0);
  EXPECT_EQ(p.t_grid().back(), 1.0);
  const ProblemFile q = parse_problem(nlohmann::json::parse(kProblem2));
  EXPECT_EQ(q.x_lo(), 0.0);
}

TEST(ProblemFile, SchemaViolations) {
  auto bad = [](const std::string& patch) {
    nlohmann::json j = nlohmann::json::parse(kProblem1);
    j.merge_patch(nlohmann::json::parse(patch));
    return j;
  };
  EXPECT_THROW(parse_problem(bad(R"J({"extra": 1})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"alpha": "0.5"})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"problem": "other"})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"beta": 0.5})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"grid": {"t_points": 0}})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"data": {"phi": "0"}})J")), SchemaError);
  EXPECT_THROW(parse_problem(bad(R"J({"data": {"w": "x^^2"}})J")), ParseError);
  EXPECT_THROW(parse_problem(bad(R"J({"alpha": 1.5})J")), DomainError);
  nlohmann::json j = nlohmann::json::parse(kProblem2);
  j["data"]["psi"] = "x";
  EXPECT_THROW(parse_problem(j), DomainError);
}

TEST(Solve, GridRoundTripMatchesEvaluator) {
  const fs::path dir = scratch_dir("solve1");
  write_file(dir / "p.json", kProblem1);
  ASSERT_EQ(solve(dir / "p.json", dir / "out"), kExitOk);
  const Table u = read_csv((dir / "out" / "U.csv").string());
  ASSERT_EQ(u.rows.size(), 6u * 9u);
  Problem1Spec s{0.6, 1.0, parse_expression("0"), parse_expression("1 + (3*x^2 - 1)"), 8};
  const Problem1Solution sol = solve_problem1(s);
  for (const auto& r : u.rows) EXPECT_EQ(r[2], eval_U(sol, r[0], r[1]));
  EXPECT_EQ(u.rows[0][0], 0.0);
  EXPECT_EQ(u.rows[1][0], 0.0);
  EXPECT_EQ(u.rows[9][0], 0.2);

  const Table h = read_csv((dir / "out" / "h.csv").string());
  for (const auto& r : h.rows) EXPECT_EQ(r[1], eval_h(sol, r[0]));

  const auto meta = nlohmann::json::parse(read_file(dir / "out" / "meta.json"));
  EXPECT_EQ(meta["effective_truncation"], 8);
  EXPECT_EQ(meta["problem"]["alpha"], 0.6);
  EXPECT_TRUE(meta["warnings"].empty());
}

TEST(Solve, TimeDegenerateRoundTrip) {
  const fs::path dir = scratch_dir("solve2");
  write_file(dir / "p.json", kProblem2);
  ASSERT_EQ(solve(dir / "p.json", dir / "out"), kExitOk);
  const Table u = read_csv((dir / "out" / "U.csv").string());
  Problem2Spec s{0.5, 0.5, 1.0, parse_expression("0"), parse_expression("sin(pi*x)"), 4};
  const Problem2Solution sol = solve_problem2(s);
  for (const auto& r : u.rows) EXPECT_EQ(r[2], eval_u2(sol, r[0], r[1]));
}

TEST(Solve, DeterministicOutput) {
  const fs::path dir = scratch_dir("det");
  write_file(dir / "p.json", kProblem1);
  ASSERT_EQ(solve(dir / "p.json", dir / "a"), kExitOk);
  ASSERT_EQ(solve(dir / "p.json", dir / "b"), kExitOk);
  for (const char* f : {"U.csv", "h.csv", "meta.json"}) {
    EXPECT_EQ(read_file(dir / "a" / f), read_file(dir / "b" / f)) << f;
  }
}

TEST(Solve, ZeroDataGivesZeroCsv) {
  const fs::path dir = scratch_dir("zero");
  write_file(dir / "p.json", R"J({"problem": "space_degenerate", "alpha": 0.5, "T": 1,
    "data": {"v": "0", "w": "0"}, "truncation": 5, "grid": {"t_points": 4, "x_points": 5}})J");
  ASSERT_EQ(solve(dir / "p.json", dir / "out"), kExitOk);
  for (const auto& r : read_csv((dir / "out" / "U.csv").string()).rows) EXPECT_EQ(r[2], 0.0);
  for (const auto& r : read_csv((dir / "out" / "h.csv").string()).rows) EXPECT_EQ(r[1], 0.0);
}

TEST(Solve, ExitCodes) {
  const fs::path dir = scratch_dir("codes");
  EXPECT_EQ(solve(dir / "missing.json", dir / "out"), kExitUsage);
  write_file(dir / "bad.json", "{ not json");
  EXPECT_EQ(solve(dir / "bad.json", dir / "out"), kExitUsage);
  // Phi nonzero with a grid starting at t = 0: u is singular there.
  write_file(dir / "sing.json", R"J({"problem": "time_degenerate", "alpha": 0.5, "beta": 0.5,
    "T": 1, "data": {"phi": "sin(pi*x)", "psi": "sin(pi*x)"}, "truncation": 2,
    "grid": {"t_points": 3, "x_points": 3}})J");
  std::ostringstream o, e;
  SolveOptions opt{(dir / "sing.json").string(), (dir / "out").string()};
  EXPECT_EQ(cmd_solve(opt, o, e), kExitNumerical);
  EXPECT_NE(e.str().find("eval_u2"), std::string::npos) << e.str();
}

TEST(Plot, WritesSvgAndRejectsMissingOrEmptyInput) {
  const fs::path dir = scratch_dir("plot");
  write_file(dir / "p.json", kProblem1);
  ASSERT_EQ(solve(dir / "p.json", dir / "out"), kExitOk);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_plot({(dir / "out").string(), {}}, o, e), kExitOk) << e.str();
  const std::string svg = read_file(dir / "out" / "U.svg");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("t = 0.2"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "out" / "h.svg"));

  EXPECT_EQ(cmd_plot({(dir / "nothing").string(), {}}, o, e), kExitUsage);
  fs::create_directories(dir / "empty");
  write_file(dir / "empty" / "U.csv", "t,x,value\n");
  write_file(dir / "empty" / "h.csv", "x,value\n");
  EXPECT_EQ(cmd_plot({(dir / "empty").string(), {}}, o, e), kExitUsage);
}

TEST(Plot, UsesProblemPlotTimes) {
  const fs::path dir = scratch_dir("plot_times");
  write_file(dir / "p.json", R"J({
    "problem": "space_degenerate", "alpha": 0.6, "T": 1.0,
    "data": {"v": "0", "w": "1"},
    "truncation": 4, "grid": {"t_points": 6, "x_points": 9},
    "plot_times": [0.4, 0.8]
  })J");
  ASSERT_EQ(solve(dir / "p.json", dir / "out"), kExitOk);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_plot({(dir / "out").string(), {}}, o, e), kExitOk) << e.str();
  const std::string svg = read_file(dir / "out" / "U.svg");
  EXPECT_NE(svg.find("t = 0.4"), std::string::npos);
  EXPECT_NE(svg.find("t = 0.8"), std::string::npos);
  EXPECT_EQ(svg.find("t = 0.2"), std::string::npos);
}

TEST(Svg, RendersSeries) {
  const std::string s = render_svg({"T", "x", "y", {{"a<b", {0, 1, 2}, {1, 0, 1}}}});
  EXPECT_NE(s.find("polyline"), std::string::npos);
  EXPECT_NE(s.find("a&lt;b"), std::string::npos);
  EXPECT_THROW(render_svg({"T", "x", "y", {}}), std::invalid_argument);
}

TEST(Verify, ExitCodesAndSeedFallback) {
  std::ostringstream o, e;
  VerifyOptions bad;
  bad.suite = "legendr";
  EXPECT_EQ(cmd_verify(bad, o, e), kExitUsage);

  const fs::path dir = scratch_dir("verify");
  VerifyOptions ok;
  ok.suite = "legendre";
  ok.report_path = (dir / "r.json").string();
  ok.seed = 42;
  EXPECT_EQ(cmd_verify(ok, o, e), kExitOk);
  const auto j = nlohmann::json::parse(read_file(dir / "r.json"));
  EXPECT_EQ(j.size(), suite_manifest("legendre").size());

  ::setenv("FRACINV_SEED", "123", 1);
  EXPECT_EQ(seed_from_env(), std::optional<std::uint64_t>(123));
  ::setenv("FRACINV_SEED", "12x", 1);
  EXPECT_THROW(seed_from_env(), std::invalid_argument);
  ok.seed.reset();
  EXPECT_EQ(cmd_verify(ok, o, e), kExitUsage);
  ::unsetenv("FRACINV_SEED");
  EXPECT_EQ(seed_from_env(), std::nullopt);
}
