#include "doctest.h"
#include "twoserver/verification.h"

namespace twoserver {
namespace {

TEST_CASE("all checks pass at the default seed") {
  VerifyConfig config;
  config.samples = 100000;
  const std::vector<CheckResult> results = run_verification(config);
  CHECK(results.size() == verification_check_names().size());
  for (const CheckResult& r : results) {
    INFO(r.name, " closed=", r.closed_form, " estimate=", r.estimate);
    CHECK(r.passed);
  }
  CHECK(all_passed(results));
}

TEST_CASE("an injected fault is caught") {
  for (const std::string name :
       {"case1_welfare_c0.5", "case2_region_sum_quadrature"}) {
    VerifyConfig config;
    config.samples = 100000;
    config.fault = name;
    const std::vector<CheckResult> results = run_verification(config);
    CHECK_FALSE(all_passed(results));
    for (const CheckResult& r : results) CHECK(r.passed == (r.name != name));
  }
}

TEST_CASE("small runs still produce a well-formed report") {
  VerifyConfig config;
  config.samples = 1000;
  const std::vector<CheckResult> results = run_verification(config);
  const std::string report = format_verification(results, config);
  CHECK(report.rfind("rng mt19937_64/splitmix64 seed 42 samples 1000\n", 0) ==
        0);
  CHECK(report.find(" checks passed\n") != std::string::npos);
  CHECK(report == format_verification(run_verification(config), config));
}

}  // namespace
}  // namespace twoserver
