#include "twoserver/full_info.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace twoserver {
namespace {

constexpr PureProfile kActiveInactive{Action::kActive, Action::kInactive};
constexpr PureProfile kInactiveActive{Action::kInactive, Action::kActive};
constexpr PureProfile kBothInactive{Action::kInactive, Action::kInactive};
constexpr PureProfile kBothActive{Action::kActive, Action::kActive};

bool near(double a, double b) { return std::abs(a - b) <= kTieTolerance; }

// Mixing probabilities may overshoot [0,1] by rounding on the region
// boundary; anything larger indicates a classification bug.
double checked_probability(double sigma) {
  if (sigma < -1e-9 || sigma > 1.0 + 1e-9) {
    throw std::logic_error("mixed equilibrium probability " +
                           std::to_string(sigma) + " outside [0,1]");
  }
  return std::clamp(sigma, 0.0, 1.0);
}

MixedEquilibrium contention_mix(const State& s, double c) {
  const double p1 = s.p1();
  const double p2 = s.p2();
  if (p1 >= p2) {
    return {checked_probability((p2 - c) / p2),
            checked_probability((p1 - c) / p2)};
  }
  return {checked_probability((p2 - c) / p1),
          checked_probability((p1 - c) / p1)};
}

}  // namespace

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kBothInactive:
      return "both_inactive";
    case EquilibriumKind::kBoundaryMix1:
      return "boundary_mix_1";
    case EquilibriumKind::kBoundaryMix2:
      return "boundary_mix_2";
    case EquilibriumKind::kOnly21:
      return "only_inactive_active";
    case EquilibriumKind::kOnly12:
      return "only_active_inactive";
    case EquilibriumKind::kContention:
      return "contention";
  }
  return "unknown";
}

EquilibriumSet classify_state(const State& s, Cost c) {
  const double cost = c.value();
  const double hi = s.max();
  const double lo = s.min();
  const double gap = std::abs(s.p1() - s.p2());

  EquilibriumSet result{EquilibriumKind::kBothInactive, {}, std::nullopt};
  if (hi < cost - kTieTolerance) {
    result.pure_equilibria = {kBothInactive};
  } else if (near(hi, cost)) {
    result.kind = s.p1() >= s.p2() ? EquilibriumKind::kBoundaryMix1
                                   : EquilibriumKind::kBoundaryMix2;
    // Any server sitting exactly at the cost is indifferent, so it may be
    // active alone; with both at the cost both mirror images qualify.
    if (near(s.p1(), cost)) result.pure_equilibria.push_back(kActiveInactive);
    if (near(s.p2(), cost)) result.pure_equilibria.push_back(kInactiveActive);
    result.pure_equilibria.push_back(kBothInactive);
  } else if (lo < cost - kTieTolerance || gap > cost + kTieTolerance) {
    const bool first_serves = s.p1() > s.p2();
    result.kind =
        first_serves ? EquilibriumKind::kOnly12 : EquilibriumKind::kOnly21;
    result.pure_equilibria = {first_serves ? kActiveInactive
                                           : kInactiveActive};
  } else {
    result.kind = EquilibriumKind::kContention;
    result.pure_equilibria = {kActiveInactive, kInactiveActive};
    result.mixed = contention_mix(s, cost);
  }
  // Free activity: joining an active server never lowers one's payoff.
  if (cost <= kTieTolerance &&
      std::find(result.pure_equilibria.begin(), result.pure_equilibria.end(),
                kBothActive) == result.pure_equilibria.end()) {
    result.pure_equilibria.push_back(kBothActive);
  }
  return result;
}

MixedEquilibrium mixed_equilibrium(const State& s, Cost c) {
  const EquilibriumSet set = classify_state(s, c);
  if (set.kind != EquilibriumKind::kContention) {
    throw std::domain_error("state is outside the contention region (kind " +
                            std::string(to_string(set.kind)) + ")");
  }
  return *set.mixed;
}

StrategyProfile select_equilibrium(const State& s, Cost c,
                                   SelectionPolicy policy) {
  const EquilibriumSet set = classify_state(s, c);
  switch (set.kind) {
    case EquilibriumKind::kBothInactive:
    case EquilibriumKind::kBoundaryMix1:
    case EquilibriumKind::kBoundaryMix2:
      return StrategyProfile::pure(kBothInactive);
    case EquilibriumKind::kOnly12:
      return StrategyProfile::pure(kActiveInactive);
    case EquilibriumKind::kOnly21:
      return StrategyProfile::pure(kInactiveActive);
    case EquilibriumKind::kContention:
      break;
  }
  if (s.p1() == s.p2()) return StrategyProfile::pure(kActiveInactive);
  const bool first_higher = s.p1() > s.p2();
  const bool first_serves =
      policy == SelectionPolicy::kMaxWelfare ? first_higher : !first_higher;
  return StrategyProfile::pure(first_serves ? kActiveInactive
                                            : kInactiveActive);
}

double welfare_case3_max(Cost c) {
  const double x = c.value();
  return -x * x * x / 3.0 - x + 4.0 / 3.0;
}

double welfare_case3_min(Cost c) {
  const double x = c.value();
  if (x < 0.5) return 3.0 * x * x * x - 2.0 * x * x - x + 4.0 / 3.0;
  // Factored so the root at c = 1 is exact.
  return (x - 1.0) * (x * x - 5.0 * x - 2.0) / 3.0;
}

StrategyProfile regulated_equilibrium(const State& s, Cost c) {
  if (s.max() < c.value() / 2.0) return StrategyProfile::pure(kBothInactive);
  return StrategyProfile::pure(s.p1() >= s.p2() ? kActiveInactive
                                                : kInactiveActive);
}

}  // namespace twoserver
