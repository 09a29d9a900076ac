#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fracinv/error.hpp"
#include "fracinv/verify.hpp"
#include "json.hpp"

using namespace fracinv;

TEST(Verify, ManifestIsCompleteAndUnique) {
  std::vector<std::string> joined;
  for (const auto& s : suite_names()) {
    const auto names = suite_manifest(s);
    EXPECT_FALSE(names.empty()) << s;
    joined.insert(joined.end(), names.begin(), names.end());
  }
  EXPECT_EQ(joined, suite_manifest("all"));
  EXPECT_EQ(std::set<std::string>(joined.begin(), joined.end()).size(), joined.size());
  EXPECT_THROW(suite_manifest("legendr"), DomainError);
}

TEST(Verify, NamedChecksPresent) {
  auto has = [](const std::string& suite, const std::string& name) {
    const auto n = suite_manifest(suite);
    return std::find(n.begin(), n.end(), name) != n.end();
  };
  EXPECT_TRUE(has("legendre", "orthogonality_j"));
  EXPECT_TRUE(has("problem1", "p7_decay_slope"));
  EXPECT_TRUE(has("problem2", "figure3_monotone_decreasing"));
}

TEST(Verify, OrthogonalityThreshold) {
  const CheckResult r = run_check("orthogonality_j");
  EXPECT_EQ(r.name, "orthogonality_j");
  EXPECT_EQ(r.threshold, 1e-12);
  EXPECT_TRUE(r.passed) << r.details;
}

TEST(Verify, DeterministicForFixedSeed) {
  const auto a = report_json(run_suite("legendre", 7));
  const auto b = report_json(run_suite("legendre", 7));
  EXPECT_EQ(a, b);
}

TEST(Verify, UnknownCheckNameThrows) {
  EXPECT_THROW(run_check("no_such_check"), DomainError);
}

TEST(Verify, ReportSchema) {
  std::vector<CheckResult> rs = {{"a", true, 1e-13, 1e-12, "ok"},
                                 {"b", false, std::nan(""), 1.0, ""}};
  const auto j = nlohmann::json::parse(report_json(rs));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["name"], "a");
  EXPECT_EQ(j[0]["passed"], true);
  EXPECT_EQ(j[0]["threshold"].get<double>(), 1e-12);
  EXPECT_TRUE(j[1]["measured"].is_null());
  EXPECT_EQ(j[1]["details"], "");
}
