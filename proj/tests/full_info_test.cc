#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "generators.h"
#include "twoserver/cooperative.h"
#include "twoserver/full_info.h"
#include "twoserver/oracle.h"

namespace twoserver {
namespace {

using testing::for_all;
using testing::Gen;
constexpr Action A = Action::kActive;
constexpr Action I = Action::kInactive;

bool listed(const EquilibriumSet& set, Action a1, Action a2) {
  return std::find(set.pure_equilibria.begin(), set.pure_equilibria.end(),
                   PureProfile{a1, a2}) != set.pure_equilibria.end();
}

TEST_CASE("classification examples") {
  CHECK(classify_state(State(0.1, 0.2), Cost(0.3)).kind ==
        EquilibriumKind::kBothInactive);
  const EquilibriumSet only = classify_state(State(0.2, 0.9), Cost(0.3));
  CHECK(only.kind == EquilibriumKind::kOnly21);
  CHECK(only.pure_equilibria.size() == 1);
  CHECK(listed(only, I, A));

  const EquilibriumSet mid = classify_state(State(0.6, 0.7), Cost(0.3));
  CHECK(mid.kind == EquilibriumKind::kContention);
  CHECK(listed(mid, A, I));
  CHECK(listed(mid, I, A));
  REQUIRE(mid.mixed);
  CHECK(mid.mixed->sigma1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(mid.mixed->sigma2 == doctest::Approx(0.5).epsilon(1e-12));

  const MixedEquilibrium m = mixed_equilibrium(State(0.8, 0.6), Cost(0.3));
  CHECK(m.sigma1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.sigma2 == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  const MixedEquilibrium sym = mixed_equilibrium(State(0.5, 0.5), Cost(0.2));
  CHECK(sym.sigma1 == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(sym.sigma2 == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("boundary and degenerate costs") {
  const EquilibriumSet b = classify_state(State(0.3, 0.1), Cost(0.3));
  CHECK(b.kind == EquilibriumKind::kBoundaryMix1);
  CHECK(listed(b, A, I));
  CHECK(listed(b, I, I));
  CHECK(classify_state(State(0.1, 0.3), Cost(0.3)).kind ==
        EquilibriumKind::kBoundaryMix2);
  // Zero cost makes joint activity a weak equilibrium too.
  CHECK(listed(classify_state(State(0.4, 0.7), Cost(0.0)), A, A));
  CHECK_THROWS_AS(mixed_equilibrium(State(0.2, 0.9), Cost(0.3)),
                  std::domain_error);
}

TEST_CASE("selection examples") {
  const State s(0.8, 0.6);
  CHECK(select_equilibrium(s, Cost(0.3), SelectionPolicy::kMaxWelfare) ==
        StrategyProfile::pure(A, I));
  CHECK(select_equilibrium(s, Cost(0.3), SelectionPolicy::kMinWelfare) ==
        StrategyProfile::pure(I, A));
  for (const SelectionPolicy p :
       {SelectionPolicy::kMaxWelfare, SelectionPolicy::kMinWelfare}) {
    CHECK(select_equilibrium(State(0.2, 0.9), Cost(0.3), p) ==
          StrategyProfile::pure(I, A));
    CHECK(select_equilibrium(State(0.5, 0.5), Cost(0.3), p) ==
          StrategyProfile::pure(A, I));
  }
}

TEST_CASE("welfare bounds") {
  CHECK(welfare_case3_max(Cost(0.0)) == doctest::Approx(4.0 / 3.0));
  CHECK(welfare_case3_max(Cost(0.5)) == doctest::Approx(0.791666666667));
  CHECK(welfare_case3_max(Cost(1.0)) == doctest::Approx(0.0));
  CHECK(welfare_case3_min(Cost(0.25)) == doctest::Approx(1.00520833333));
  CHECK(welfare_case3_min(Cost(0.5)) == doctest::Approx(0.708333333333));
  CHECK(welfare_case3_min(Cost(0.0)) == doctest::Approx(4.0 / 3.0));
  CHECK(welfare_case3_min(Cost(1.0)) == 0.0);
}

TEST_CASE("regulated equilibrium examples") {
  CHECK(regulated_equilibrium(State(0.8, 0.4), Cost(0.6)) ==
        StrategyProfile::pure(A, I));
  CHECK(regulated_equilibrium(State(0.1, 0.1), Cost(0.6)) ==
        StrategyProfile::pure(I, I));
  CHECK(regulated_equilibrium(State(0.4, 0.7), Cost(0.6)) ==
        StrategyProfile::pure(I, A));
}

TEST_CASE("property: the case split is exhaustive and exclusive") {
  // Every grid state gets exactly one kind; the kinds nest as expected.
  for (const double c : {0.0, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        const State s(i / 100.0, j / 100.0);
        const EquilibriumSet set = classify_state(s, Cost(c));
        CHECK(!set.pure_equilibria.empty());
        CHECK(set.mixed.has_value() ==
              (set.kind == EquilibriumKind::kContention));
      }
    }
  }
}

TEST_CASE("property: listed profiles are exactly the pure equilibria") {
  for_all(41, 5000, [](Gen& g) {
    const State s = g.state();
    const Cost c = g.cost();
    const EquilibriumSet set = classify_state(s, c);
    INFO("p1=", s.p1(), " p2=", s.p2(), " c=", c.value());
    for (const Action a1 : {I, A}) {
      for (const Action a2 : {I, A}) {
        const bool stable =
            deviation_gain(s, StrategyProfile::pure(a1, a2), c) <= 1e-12;
        CHECK(stable == listed(set, a1, a2));
      }
    }
  });
}

TEST_CASE("property: mixed equilibria make both servers indifferent") {
  for_all(42, 5000, [](Gen& g) {
    const State s = g.state();
    const Cost c = g.cost();
    const EquilibriumSet set = classify_state(s, c);
    if (!set.mixed) return;
    const MixedAction m1(set.mixed->sigma1);
    const MixedAction m2(set.mixed->sigma2);
    const MixedAction on = MixedAction::pure(A);
    const MixedAction off = MixedAction::pure(I);
    INFO("p1=", s.p1(), " p2=", s.p2(), " c=", c.value());
    CHECK(std::abs(payoff_mixed(s, on, m2, c).u1 -
                   payoff_mixed(s, off, m2, c).u1) <= 1e-12);
    CHECK(std::abs(payoff_mixed(s, m1, on, c).u2 -
                   payoff_mixed(s, m1, off, c).u2) <= 1e-12);
  });
}

TEST_CASE("property: the mixed equilibrium is unstable") {
  // Nudging sigma1 breaks server 2's indifference, in opposite directions.
  for_all(43, 5000, [](Gen& g) {
    const State s = g.state();
    const Cost c(g.range(0.01, 0.99));
    const EquilibriumSet set = classify_state(s, c);
    if (!set.mixed || set.mixed->sigma1 < 0.01 || set.mixed->sigma1 > 0.99) {
      return;
    }
    const double x = set.mixed->sigma1;
    auto margin = [&](double sigma1) {
      const MixedAction m1(sigma1);
      return payoff_mixed(s, m1, MixedAction::pure(I), c).u2 -
             payoff_mixed(s, m1, MixedAction::pure(A), c).u2;
    };
    INFO("p1=", s.p1(), " p2=", s.p2(), " c=", c.value());
    CHECK(margin(x + 0.01) > 0.0);
    CHECK(margin(x - 0.01) < 0.0);
  });
}

TEST_CASE("property: selections are equilibria ordered by welfare") {
  for_all(44, 5000, [](Gen& g) {
    const State s = g.state();
    const Cost c = g.cost();
    const StrategyProfile hi =
        select_equilibrium(s, c, SelectionPolicy::kMaxWelfare);
    const StrategyProfile lo =
        select_equilibrium(s, c, SelectionPolicy::kMinWelfare);
    CHECK(deviation_gain(s, hi, c) <= 1e-12);
    CHECK(deviation_gain(s, lo, c) <= 1e-12);
    const double w_hi = pointwise_welfare(s, hi, c);
    CHECK(w_hi >= pointwise_welfare(s, lo, c) - 1e-12);
    CHECK(pointwise_welfare(s, optimal_profile(s, c), c) >= w_hi - 1e-12);
  });
}

TEST_CASE("property: regulated equilibrium is the unique equilibrium") {
  for_all(45, 5000, [](Gen& g) {
    const State s = g.state();
    const Cost c = g.cost();
    const StrategyProfile reg = regulated_equilibrium(s, c);
    INFO("p1=", s.p1(), " p2=", s.p2(), " c=", c.value());
    CHECK(deviation_gain(s, reg, c, PayoffVariant::kCase3SidePayment) <= 1e-12);
    CHECK(pointwise_welfare(s, reg, c) ==
          doctest::Approx(pointwise_welfare(s, optimal_profile(s, c), c))
              .epsilon(1e-12));
  });
}

TEST_CASE("welfare ordering across costs") {
  for (int k = 1; k < 100; ++k) {
    const Cost c(k / 100.0);
    CHECK(welfare_case1(c) > welfare_case3_max(c));
    CHECK(welfare_case3_max(c) > welfare_case3_min(c));
  }
  const double lower = 3 * 0.125 - 2 * 0.25 - 0.5 + 4.0 / 3.0;
  CHECK(std::abs(lower - welfare_case3_min(Cost(0.5))) <= 1e-12);
}

}  // namespace
}  // namespace twoserver
