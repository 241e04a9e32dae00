#ifndef TWOSERVER_COOPERATIVE_H_
#define TWOSERVER_COOPERATIVE_H_

#include "twoserver/game_core.h"

// Cooperative servers with full communication: the socially optimal action
// profile at every state and the resulting expected welfare under uniform
// success probabilities.

namespace twoserver {

struct StrategyProfile {
  MixedAction a1;
  MixedAction a2;

  static StrategyProfile pure(Action a1, Action a2) {
    return {MixedAction::pure(a1), MixedAction::pure(a2)};
  }
  static StrategyProfile pure(PureProfile p) { return pure(p.a1, p.a2); }

  bool operator==(const StrategyProfile&) const = default;
};

// Best server serves alone iff its p exceeds c/2. On the boundary
// max{p1,p2} == c/2 every mix is optimal; Inactive is returned. Ties
// p1 == p2 > c/2 go to server 1.
StrategyProfile optimal_profile(const State& s, Cost c);

// u1 + u2 of the chosen payoff variant under the profile's randomization.
double pointwise_welfare(const State& s, const StrategyProfile& prof, Cost c,
                         PayoffVariant variant = PayoffVariant::kUnregulated);

// Expected welfare of optimal_profile with p1, p2 i.i.d. uniform on [0,1]:
// c^3/12 - c + 4/3.
double welfare_case1(Cost c);

}  // namespace twoserver

#endif  // TWOSERVER_COOPERATIVE_H_
