#include "twoserver/verification.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <iomanip>

#include "twoserver/bayesian.h"
#include "twoserver/cooperative.h"
#include "twoserver/full_info.h"
#include "twoserver/oracle.h"
#include "twoserver/random.h"
#include "twoserver/sweep.h"

namespace twoserver {
namespace {

struct Check {
  std::string name;
  // Fills closed_form, estimate, std_error and tolerance.
  std::function<CheckResult(std::size_t samples, std::uint64_t seed)> run;
};

CheckResult sampled(double closed_form, const Estimate& e) {
  CheckResult r;
  r.closed_form = closed_form;
  r.estimate = e.mean;
  r.std_error = e.std_error;
  r.tolerance = std::max(3.0 * e.std_error, 1e-12);
  return r;
}

CheckResult exact(double closed_form, double estimate, double tolerance) {
  CheckResult r;
  r.closed_form = closed_form;
  r.estimate = estimate;
  r.tolerance = tolerance;
  return r;
}

std::string cost_label(double c) { return "c" + format_number(c); }

std::vector<Check> build_checks() {
  const Distribution uniform = Distribution::uniform();
  std::vector<Check> checks;

  for (const double c : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    checks.push_back({"case1_welfare_" + cost_label(c),
                      [=](std::size_t n, std::uint64_t seed) {
                        const Cost cost(c);
                        const StrategyMap s = [&](const State& st) {
                          return optimal_profile(st, cost);
                        };
                        return sampled(welfare_case1(cost),
                                       mc_welfare(s, cost, uniform, uniform, n,
                                                  seed));
                      }});
  }
  for (const bool regulated : {false, true}) {
    const double c = regulated ? 0.5 : 0.25;
    checks.push_back(
        {std::string(regulated ? "case2_regulated_nash_welfare_"
                               : "case2_nash_welfare_") +
             cost_label(c),
         [=](std::size_t n, std::uint64_t seed) {
           const Cost cost(c);
           const ThresholdPair tp = nash_threshold(cost, regulated);
           const StrategyMap s = [&](const State& st) {
             return threshold_profile(tp, st);
           };
           return sampled(welfare_thresholds(tp, cost).total,
                          mc_welfare(s, cost, uniform, uniform, n, seed));
         }});
  }
  for (const double c : {0.25, 0.75}) {
    for (const SelectionPolicy policy :
         {SelectionPolicy::kMaxWelfare, SelectionPolicy::kMinWelfare}) {
      const bool is_max = policy == SelectionPolicy::kMaxWelfare;
      checks.push_back(
          {std::string(is_max ? "case3_max_welfare_" : "case3_min_welfare_") +
               cost_label(c),
           [=](std::size_t n, std::uint64_t seed) {
             const Cost cost(c);
             const StrategyMap s = [&](const State& st) {
               return select_equilibrium(st, cost, policy);
             };
             return sampled(
                 is_max ? welfare_case3_max(cost) : welfare_case3_min(cost),
                 mc_welfare(s, cost, uniform, uniform, n, seed));
           }});
    }
  }
  for (const double c : {0.25, 0.75}) {
    checks.push_back({"case3_regulated_welfare_" + cost_label(c),
                      [=](std::size_t n, std::uint64_t seed) {
                        const Cost cost(c);
                        const StrategyMap s = [&](const State& st) {
                          return regulated_equilibrium(st, cost);
                        };
                        return sampled(welfare_case1(cost),
                                       mc_welfare(s, cost, uniform, uniform, n,
                                                  seed));
                      }});
  }
  checks.push_back(
      {"case2_best_response_grid", [](std::size_t, std::uint64_t) {
         double worst = 0.0;
         for (const bool regulated : {false, true}) {
           for (int i = 0; i <= 20; ++i) {
             for (int j = 0; j <= 20; ++j) {
               const double t = i / 20.0;
               const Cost cost(j / 20.0);
               const double closed = best_response_threshold(t, cost, regulated);
               const double grid = grid_best_response(t, cost, regulated, 1e-3);
               worst = std::max(worst, std::abs(grid - closed));
             }
           }
         }
         return exact(0.0, worst, 1e-3 + 1e-12);
       }});
  checks.push_back(
      {"case2_nash_deviation_c0.25", [=](std::size_t, std::uint64_t seed) {
         const Cost cost(0.25);
         const DeviationReport report =
             epsilon_nash_check(nash_threshold(cost, false), cost,
                                CheckMode::kAnalyticQuadrature, 1e-6, seed,
                                uniform);
         return exact(0.0, report.max_gain, 1e-6);
       }});
  checks.push_back(
      {"case2_region_sum_quadrature", [](std::size_t, std::uint64_t) {
         const Cost cost(0.2);
         const ThresholdPair tp(0.3, 0.7);
         return exact(welfare_thresholds(tp, cost).server1,
                      threshold_region_payoffs(tp, cost, 1).sum(), 1e-10);
       }});
  checks.push_back(
      {"general_threshold_power2_c0.125", [](std::size_t, std::uint64_t) {
         const Cost cost(0.125);
         return exact(std::cbrt(0.125),
                      nash_threshold_general(Distribution::power(2.0), cost),
                      1e-9);
       }});
  return checks;
}

}  // namespace

std::vector<std::string> verification_check_names() {
  std::vector<std::string> names;
  for (const Check& check : build_checks()) names.push_back(check.name);
  return names;
}

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  std::vector<CheckResult> results;
  const std::vector<Check> checks = build_checks();
  for (std::size_t k = 0; k < checks.size(); ++k) {
    CheckResult r = checks[k].run(config.samples, derive_seed(config.seed, k));
    r.name = checks[k].name;
    if (r.name == config.fault) r.closed_form += 0.01;
    r.passed = std::abs(r.estimate - r.closed_form) <= r.tolerance;
    results.push_back(r);
  }
  return results;
}

bool all_passed(std::span<const CheckResult> results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::string format_verification(std::span<const CheckResult> results,
                                const VerifyConfig& config) {
  std::ostringstream out;
  out << "rng " << kRngAlgorithm << " seed " << config.seed << " samples "
      << config.samples << "\n";
  out << std::left << std::setw(36) << "check" << std::setw(18)
      << "closed_form" << std::setw(18) << "estimate" << std::setw(18)
      << "stderr" << std::setw(18) << "tolerance"
      << "result\n";
  for (const CheckResult& r : results) {
    out << std::left << std::setw(36) << r.name << std::setw(18)
        << format_number(r.closed_form) << std::setw(18)
        << format_number(r.estimate) << std::setw(18)
        << format_number(r.std_error) << std::setw(18)
        << format_number(r.tolerance) << (r.passed ? "pass" : "FAIL") << "\n";
  }
  const auto failed = std::count_if(results.begin(), results.end(),
                                    [](const CheckResult& r) {
                                      return !r.passed;
                                    });
  out << results.size() - failed << "/" << results.size()
      << " checks passed\n";
  return out.str();
}

}  // namespace twoserver
