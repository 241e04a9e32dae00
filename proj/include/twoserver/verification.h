#ifndef TWOSERVER_VERIFICATION_H_
#define TWOSERVER_VERIFICATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Runs every closed form against its independent oracle and tabulates the
// outcome. Sampled checks pass within 3 standard errors; deterministic checks
// carry their own absolute tolerance.

namespace twoserver {

struct VerifyConfig {
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  // Name of a check whose closed form is shifted by +0.01 (negative control).
  std::string fault;
};

struct CheckResult {
  std::string name;
  double closed_form = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<std::string> verification_check_names();

std::vector<CheckResult> run_verification(const VerifyConfig& config);

bool all_passed(std::span<const CheckResult> results);

// Fixed-width table; deterministic for a given config.
std::string format_verification(std::span<const CheckResult> results,
                                const VerifyConfig& config);

}  // namespace twoserver

#endif  // TWOSERVER_VERIFICATION_H_
