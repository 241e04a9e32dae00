#ifndef TWOSERVER_FULL_INFO_H_
#define TWOSERVER_FULL_INFO_H_

#include <optional>
#include <string_view>
#include <vector>

#include "twoserver/cooperative.h"
#include "twoserver/game_core.h"

// Uncooperative servers that both observe (p1, p2): the Nash equilibria of the
// 2x2 stage game at each state, welfare bounds over equilibrium selections, and
// the side-payment regulation that makes the social optimum the equilibrium.

namespace twoserver {

// Equalities between probabilities and costs (max == c, |p1 - p2| <= c) are
// decided within this band. It matches the 1e-12 tolerance used when
// verifying equilibria by unilateral deviation, so grid states that sit on a
// region boundary up to rounding are classified the same way by both.
inline constexpr double kTieTolerance = 1e-12;

enum class EquilibriumKind {
  kBothInactive,   // max < c
  kBoundaryMix1,   // max == p1 == c: any sigma1 against Inactive
  kBoundaryMix2,   // max == p2 == c
  kOnly21,         // (Inactive, Active) is the unique equilibrium
  kOnly12,         // (Active, Inactive) is the unique equilibrium
  kContention,     // |p1 - p2| <= c, min >= c: both asymmetric profiles + a mix
};

std::string_view to_string(EquilibriumKind kind);

struct MixedEquilibrium {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

struct EquilibriumSet {
  EquilibriumKind kind;
  std::vector<PureProfile> pure_equilibria;
  std::optional<MixedEquilibrium> mixed;
};

// All Nash equilibria at state s. Pure equilibria are listed exhaustively,
// including weak ones on measure-zero boundaries: the boundary kinds carry
// (Active, Inactive)/(Inactive, Inactive) (or the mirror), and at c == 0
// (Active, Active) is a weak equilibrium at every state.
//
// The closure min == c < max <= 2c, which the open-region case split leaves
// uncovered, is classified as Contention; its mixed equilibrium has the
// lower server's sigma equal to 0.
EquilibriumSet classify_state(const State& s, Cost c);

// The mixed equilibrium of the Contention region:
//   p1 >= p2: ((p2 - c)/p2, (p1 - c)/p2)
//   p1 <  p2: ((p2 - c)/p1, (p1 - c)/p1)
// Throws std::domain_error for states outside Contention.
MixedEquilibrium mixed_equilibrium(const State& s, Cost c);

enum class SelectionPolicy { kMaxWelfare, kMinWelfare };

// One pure equilibrium per state. Outside Contention the unique equilibrium
// (boundary kinds resolve to Inactive). Inside Contention the higher-p server
// is active under kMaxWelfare and the lower-p server under kMinWelfare; ties
// p1 == p2 give (Active, Inactive) under both policies.
StrategyProfile select_equilibrium(const State& s, Cost c,
                                   SelectionPolicy policy);

// Expected welfare of the best equilibrium selection: -c^3/3 - c + 4/3.
double welfare_case3_max(Cost c);

// Expected welfare of the worst equilibrium selection:
//   3c^3 - 2c^2 - c + 4/3      for c < 1/2
//   c^3/3 - 2c^2 + c + 2/3     for c >= 1/2
double welfare_case3_min(Cost c);

// Pure equilibrium under the side-payment payoffs: (Inactive, Inactive) when
// max < c/2, otherwise the higher-p server alone; (Active, Inactive) on the
// tie p1 == p2 >= c/2 where both asymmetric profiles are equilibria.
StrategyProfile regulated_equilibrium(const State& s, Cost c);

}  // namespace twoserver

#endif  // TWOSERVER_FULL_INFO_H_
