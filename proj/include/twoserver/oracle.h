#ifndef TWOSERVER_ORACLE_H_
#define TWOSERVER_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "twoserver/bayesian.h"
#include "twoserver/cooperative.h"
#include "twoserver/game_core.h"

// Independent numerical checks for the closed forms: Monte-Carlo welfare,
// Simpson quadrature, grid best responses and unilateral-deviation checks.
// Nothing here calls the closed-form welfare or best-response functions; every
// quantity is rebuilt from the stage-game payoffs.

namespace twoserver {

using StrategyMap = std::function<StrategyProfile(const State&)>;

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Sample mean of pointwise welfare over n i.i.d. states (p1 ~ d1, p2 ~ d2).
// Same (seed, n) gives a bitwise-identical result.
Estimate mc_welfare(const StrategyMap& strategy, Cost c, const Distribution& d1,
                    const Distribution& d2, std::size_t n, std::uint64_t seed,
                    PayoffVariant variant = PayoffVariant::kUnregulated);

// Splits n samples over `shards` streams seeded with derive_seed(seed, k) and
// pools them.
Estimate mc_welfare_sharded(const StrategyMap& strategy, Cost c,
                            const Distribution& d1, const Distribution& d2,
                            std::size_t n, std::size_t shards,
                            std::uint64_t seed,
                            PayoffVariant variant = PayoffVariant::kUnregulated);

// Combines independent estimates into one (exact pooled mean and variance).
// The result carries `seed` as its seed.
Estimate pool_estimates(std::span<const Estimate> parts, std::uint64_t seed);

// Composite Simpson rule with `panels` panels on [a, b]; exact for cubics.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  int panels = 64);

// Simpson on each piece between consecutive breakpoints. Breakpoints outside
// [a, b] are ignored.
double piecewise_quadrature(const std::function<double(double)>& f, double a,
                            double b, std::vector<double> breakpoints,
                            int panels = 64);

// Interim expected gain of being Active over Inactive for `server` with own
// success probability own_p, when the opponent's p follows `opponent` and it
// is active iff its p >= opp_threshold. Integrates the stage payoffs against
// the opponent's density; requires opponent.has_pdf().
double interim_gain(double own_p, int server, double opp_threshold, Cost c,
                    PayoffVariant variant, const Distribution& opponent,
                    int panels = 64);

// Smallest own p on the grid {0, step, 2 step, ..., 1} at which Active weakly
// beats Inactive against a uniform opponent with threshold opp_threshold; 1 if
// there is none. `regulated` selects the subsidy payoffs. Requires
// 0 < step <= 0.01.
double grid_best_response(double opp_threshold, Cost c, bool regulated,
                          double step);

// One server's expected payoff under a threshold pair (uniform p's), split by
// the region of the state square that produced it.
struct RegionBreakdown {
  double both_inactive = 0.0;
  double only_server1 = 0.0;
  double only_server2 = 0.0;
  double both_active_p2_leads = 0.0;  // both active, p1 <= p2
  double both_active_p1_leads = 0.0;  // both active, p1 > p2

  double sum() const {
    return both_inactive + only_server1 + only_server2 + both_active_p2_leads +
           both_active_p1_leads;
  }
};

RegionBreakdown threshold_region_payoffs(const ThresholdPair& tp, Cost c,
                                         int server, int panels = 64);

enum class CheckMode { kAnalyticQuadrature, kSampled };

struct DeviationWitness {
  int server = 1;
  Action deviation = Action::kInactive;
  std::optional<State> state;   // state-map checks
  std::optional<double> own_p;  // threshold checks
};

struct DeviationReport {
  double max_gain = 0.0;
  std::optional<DeviationWitness> witness;
  bool passed = true;  // max_gain <= eps
};

// Largest gain any server gets by switching to a pure action at state s.
double deviation_gain(const State& s, const StrategyProfile& prof, Cost c,
                      PayoffVariant variant = PayoffVariant::kUnregulated,
                      DeviationWitness* witness = nullptr);

struct ThresholdCheckOptions {
  PayoffVariant variant = PayoffVariant::kUnregulated;
  int grid_points = 401;          // own-p grid; thresholds are added
  std::size_t samples = 100000;  // opponent draws in sampled mode
};

// Threshold pairs in the game without communication. For each server the
// interim gain of Active over Inactive is evaluated on an own-p grid (plus the
// threshold itself, whose value is also the left limit since the gain is
// continuous in p), and the largest gain contradicting the threshold rule is
// reported.
//
// kAnalyticQuadrature: gains are exact expectations; eps is absolute.
// kSampled: gains are estimated from `samples` opponent draws and reported in
// standard errors; eps is a number of standard errors (3 is customary).
DeviationReport epsilon_nash_check(const ThresholdPair& tp, Cost c,
                                   CheckMode mode, double eps,
                                   std::uint64_t seed,
                                   const Distribution& dist,
                                   const ThresholdCheckOptions& options = {});

// State-map strategies in the game with communication: pure deviations at
// every state of the 0.01 grid (kAnalyticQuadrature) or at `samples` uniform
// random states (kSampled). eps is absolute in both modes.
DeviationReport epsilon_nash_check(const StrategyMap& strategy, Cost c,
                                   CheckMode mode, double eps,
                                   std::uint64_t seed,
                                   PayoffVariant variant =
                                       PayoffVariant::kUnregulated,
                                   std::size_t samples = 10000);

}  // namespace twoserver

#endif  // TWOSERVER_ORACLE_H_
