#include "twoserver/cooperative.h"

namespace twoserver {

StrategyProfile optimal_profile(const State& s, Cost c) {
  const double half_cost = c.value() / 2.0;
  if (s.max() <= half_cost) {
    return StrategyProfile::pure(Action::kInactive, Action::kInactive);
  }
  if (s.p1() >= s.p2()) {
    return StrategyProfile::pure(Action::kActive, Action::kInactive);
  }
  return StrategyProfile::pure(Action::kInactive, Action::kActive);
}

double pointwise_welfare(const State& s, const StrategyProfile& prof, Cost c,
                         PayoffVariant variant) {
  return payoff_mixed(s, prof.a1, prof.a2, c, variant).sum();
}

double welfare_case1(Cost c) {
  const double x = c.value();
  return x * x * x / 12.0 - x + 4.0 / 3.0;
}

}  // namespace twoserver
