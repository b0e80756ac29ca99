#include <gtest/gtest.h>

#include "weitz/error.hpp"
#include "weitz/linalg.hpp"
#include "weitz/verify.hpp"
#include "weitz/weitzenboeck.hpp"

using namespace weitz;

namespace {

SuiteConfig small() {
  SuiteConfig config;
  config.n_min = 4;
  config.n_max = 5;
  config.seeds = 2;
  config.trials = 5;
  config.threads = 1;
  return config;
}

const VerificationRecord* first_failure(const VerificationReport& report, const std::string& identity) {
  for (const auto& r : report.records) {
    if (r.identity == identity && !r.pass) return &r;
  }
  return nullptr;
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_NO_THROW(validate(SuiteConfig{}));
  const auto rejects = [](auto mutate) {
    SuiteConfig c;
    mutate(c);
    try {
      validate(c);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig);
    }
  };
  rejects([](SuiteConfig& c) { c.n_min = 3; });
  rejects([](SuiteConfig& c) { c.n_max = 9; });
  rejects([](SuiteConfig& c) { c.n_min = 6, c.n_max = 5; });
  rejects([](SuiteConfig& c) { c.seeds = 0; });
  rejects([](SuiteConfig& c) { c.trials = 0; });
  rejects([](SuiteConfig& c) { c.tolerance = 0.0; });
  SuiteConfig wide;
  wide.n_max = 8;
  EXPECT_NO_THROW(validate(wide));
}

TEST(Suite, EveryCriterionHasRecords) {
  const auto report = run_suite(small());
  for (int k = 1; k <= 10; ++k) EXPECT_GT(report.criterion_records(k), 0u) << k;
  EXPECT_EQ(report.passed(), report.failures() == 0);
  std::size_t failing = 0;
  for (const auto& r : report.records) failing += r.pass ? 0 : 1;
  EXPECT_EQ(failing, report.failures());
  for (int k : {1, 2, 3, 5, 6, 7, 8, 9}) EXPECT_TRUE(report.criterion_passed(k)) << k;
  EXPECT_FALSE(report.criterion_passed(11));
}

TEST(Suite, DeterministicAcrossThreadCounts) {
  auto config = small();
  const auto a = report_to_json(run_suite(config));
  config.threads = 3;
  const auto b = report_to_json(run_suite(config));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("timings_ms"), std::string::npos);
  EXPECT_NE(report_to_json(run_suite(config), true).find("timings_ms"), std::string::npos);
}

TEST(Suite, CatchesWrongCoefficient) {
  auto config = small();
  config.formula = [](const CurvatureTensor& w, int p) {
    const auto& ctx = w.context();
    const auto bracket = (1.0 / (p - 1)) * (metric(ctx) * contract(w.form())) - 1.9 * w.form();
    return bracket * metric_power(p - 2, ctx) / factorial(p - 2);
  };
  const auto report = run_suite(config);
  EXPECT_FALSE(report.criterion_passed(1));
  const auto* r = first_failure(report, "main_theorem");
  ASSERT_NE(r, nullptr);
  EXPECT_NE(r->detail.find("no constant factor fits"), std::string::npos) << r->detail;
}

TEST(Suite, ReportsConstantFactor) {
  auto config = small();
  config.formula = [](const CurvatureTensor& w, int p) { return 2.0 * np_formula(w, p); };
  const auto report = run_suite(config);
  const auto* r = first_failure(report, "main_theorem");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->detail.rfind("candidate = 2 x oracle", 0), 0u) << r->detail;
}
