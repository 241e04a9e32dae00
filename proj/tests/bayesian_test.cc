#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "generators.h"
#include "twoserver/bayesian.h"

namespace twoserver {
namespace {

using testing::for_all;
using testing::Gen;

TEST_CASE("best response closed form") {
  CHECK(best_response_threshold(0.0, Cost(0.32), false) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(best_response_threshold(1.0, Cost(0.37), false) ==
        doctest::Approx(0.37).epsilon(1e-12));
  CHECK(best_response_threshold(0.5, Cost(0.25), false) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(best_response_threshold(0.8, Cost(0.25), false) ==
        doctest::Approx(0.3125).epsilon(1e-12));
  CHECK(best_response_threshold(1.0, Cost(0.32), true) ==
        doctest::Approx(0.16).epsilon(1e-12));
  // sqrt(2c) exceeds 1 for large c; the cutoff is clamped.
  CHECK(best_response_threshold(0.0, Cost(0.9), false) == 1.0);
  CHECK_THROWS_AS(best_response_threshold(1.2, Cost(0.3), false),
                  std::invalid_argument);
}

TEST_CASE("threshold equilibria") {
  CHECK(nash_threshold(Cost(0.25), false) == ThresholdPair(0.5, 0.5));
  CHECK(nash_threshold(Cost(0.0), false) == ThresholdPair(0.0, 0.0));
  CHECK(nash_threshold(Cost(0.0), true) == ThresholdPair(0.0, 0.0));
  const ThresholdPair reg = nash_threshold(Cost(0.32), true);
  CHECK(reg.t1.value() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(reg.t2.value() == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(optimal_thresholds(Cost(0.5)).t1.value() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(optimal_thresholds(Cost(0.0)) == ThresholdPair(0.0, 0.0));
  CHECK(optimal_thresholds(Cost(0.32)).t2.value() ==
        doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("threshold welfare values") {
  for (const double c : {0.0, 0.3, 0.8}) {
    CHECK(welfare_thresholds(ThresholdPair(0.0, 0.0), Cost(c)).total ==
          doctest::Approx(4.0 / 3.0 - 2.0 * c).epsilon(1e-12));
  }
  CHECK(welfare_thresholds(ThresholdPair(0.5, 0.5), Cost(0.25)).total ==
        doctest::Approx(11.0 / 12.0).epsilon(1e-12));
  CHECK(welfare_thresholds(ThresholdPair(0.5, 0.5), Cost(0.5)).total ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Exact rationals for t1 < t2 and the mirrored ordering.
  const ThresholdWelfare w =
      welfare_thresholds(ThresholdPair(0.3, 0.7), Cost(0.2));
  CHECK(w.server1 == doctest::Approx(0.438).epsilon(1e-12));
  CHECK(w.server2 == doctest::Approx(0.518).epsilon(1e-12));
  CHECK(w.total == doctest::Approx(0.956).epsilon(1e-12));
  const ThresholdWelfare m =
      welfare_thresholds(ThresholdPair(0.7, 0.3), Cost(0.2));
  CHECK(m.server1 == doctest::Approx(0.518).epsilon(1e-12));
  CHECK(m.server2 == doctest::Approx(0.438).epsilon(1e-12));
}

TEST_CASE("property: threshold welfare mirrors under relabelling") {
  for_all(31, testing::kDefaultCases, [](Gen& g) {
    const double t1 = g.probability();
    const double t2 = g.probability();
    const Cost c = g.cost();
    const ThresholdWelfare a = welfare_thresholds(ThresholdPair(t1, t2), c);
    const ThresholdWelfare b = welfare_thresholds(ThresholdPair(t2, t1), c);
    INFO("t1=", t1, " t2=", t2, " c=", c.value());
    CHECK(a.server1 == doctest::Approx(b.server2).epsilon(1e-12));
    CHECK(a.server2 == doctest::Approx(b.server1).epsilon(1e-12));
    CHECK(a.total == doctest::Approx(a.server1 + a.server2).epsilon(1e-12));
  });
}

TEST_CASE("property: the optimal pair dominates every symmetric pair") {
  for_all(32, 200, [](Gen& g) {
    const Cost c = g.cost();
    const double best = welfare_thresholds(optimal_thresholds(c), c).total;
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      CHECK(welfare_thresholds(ThresholdPair(t, t), c).total <= best + 1e-12);
    }
    const double t1 = g.unit();
    const double t2 = g.unit();
    CHECK(welfare_thresholds(ThresholdPair(t1, t2), c).total <= best + 1e-12);
  });
}

TEST_CASE("property: best response is non-increasing in the opponent threshold") {
  for_all(33, 500, [](Gen& g) {
    const Cost c = g.cost();
    const bool regulated = g.unit() < 0.5;
    const double a = g.unit();
    const double b = g.unit();
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    CHECK(best_response_threshold(lo, c, regulated) >=
          best_response_threshold(hi, c, regulated) - 1e-15);
  });
}

TEST_CASE("damped iteration reaches the equilibrium from every start") {
  for (int k = 0; k <= 20; ++k) {
    const Cost c(k * 0.05);
    for (const double start : {0.0, 0.3, 0.7, 1.0}) {
      for (const bool regulated : {false, true}) {
        const FixedPointResult r =
            iterate_best_response(start, c, regulated);
        INFO("c=", c.value(), " start=", start);
        CHECK(r.converged);
        CHECK(r.iterations <= 100);
        CHECK(r.threshold == doctest::Approx(nash_threshold(c, regulated)
                                                 .t1.value())
                                 .epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("undamped iteration oscillates around the equilibrium") {
  const FixedPointResult r =
      iterate_best_response(0.0, Cost(0.25), false, 1.0, 100, 1e-13);
  CHECK_FALSE(r.converged);
}

TEST_CASE("distributions") {
  const Distribution u = Distribution::uniform();
  CHECK(u.cdf(0.3) == doctest::Approx(0.3));
  CHECK(u.has_pdf());
  const Distribution sq = Distribution::power(2.0);
  CHECK(sq.cdf(0.5) == doctest::Approx(0.25));
  CHECK(sq.pdf(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Distribution("bad", [](double x) { return 1.0 - x; },
                               [](Rng& r) { return uniform01(r); }),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution("short", [](double x) { return 0.5 * x; },
                               [](Rng& r) { return uniform01(r); }),
                  std::invalid_argument);
}

// Kolmogorov-Smirnov distance of 1e5 draws against the declared cdf.
double ks_distance(const Distribution& d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(100000);
  for (double& x : xs) x = d.sample(rng);
  std::sort(xs.begin(), xs.end());
  double worst = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = d.cdf(xs[i]);
    worst = std::max({worst, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return worst;
}

TEST_CASE("samplers agree with their cdf") {
  CHECK(ks_distance(Distribution::uniform(), 5) <= 0.01);
  CHECK(ks_distance(Distribution::power(2.0), 6) <= 0.01);
  CHECK(ks_distance(Distribution::power(0.5), 7) <= 0.01);
}

TEST_CASE("general fixed point") {
  CHECK(nash_threshold_general(Distribution::uniform(), Cost(0.25)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(nash_threshold_general(Distribution::uniform(), Cost(0.0)) == 0.0);
  CHECK(nash_threshold_general(Distribution::power(2.0), Cost(0.125)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  const Distribution step("step", [](double x) { return x < 0.5 ? 0.0 : 1.0; },
                          [](Rng&) { return 0.5; });
  CHECK_THROWS_AS(nash_threshold_general(step, Cost(0.25)), std::runtime_error);
}

TEST_CASE("property: general fixed point solves h F(h) = c") {
  for_all(34, 300, [](Gen& g) {
    const Cost c = g.cost();
    const double k = g.range(0.25, 4.0);
    const double h = nash_threshold_general(Distribution::power(k), c);
    INFO("k=", k, " c=", c.value());
    CHECK(std::abs(h * std::pow(h, k) - c.value()) <= 1e-10);
    CHECK(h == doctest::Approx(std::pow(c.value(), 1.0 / (k + 1.0)))
                   .epsilon(1e-8));
  });
}

}  // namespace
}  // namespace twoserver
