#include "twoserver/bayesian.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace twoserver {

ThresholdStrategy::ThresholdStrategy(double t) : t_(t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("threshold " + std::to_string(t) +
                                " outside [0,1]");
  }
}

StrategyProfile threshold_profile(const ThresholdPair& tp, const State& s) {
  return StrategyProfile::pure(tp.t1.action_at(s.p1()),
                               tp.t2.action_at(s.p2()));
}

Distribution::Distribution(std::string name, Cdf cdf, Sampler sampler, Pdf pdf)
    : name_(std::move(name)),
      cdf_(std::move(cdf)),
      sampler_(std::move(sampler)),
      pdf_(std::move(pdf)) {
  if (!cdf_ || !sampler_) {
    throw std::invalid_argument("distribution '" + name_ +
                                "' needs a cdf and a sampler");
  }
  double previous = cdf_(0.0);
  if (previous < 0.0) {
    throw std::invalid_argument("distribution '" + name_ + "': cdf(0) < 0");
  }
  for (int i = 1; i <= 1000; ++i) {
    const double value = cdf_(i / 1000.0);
    if (value < previous) {
      throw std::invalid_argument("distribution '" + name_ +
                                  "': cdf is decreasing");
    }
    previous = value;
  }
  if (std::abs(cdf_(1.0) - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution '" + name_ + "': cdf(1) != 1");
  }
}

Distribution Distribution::uniform() {
  return Distribution(
      "uniform", [](double x) { return std::clamp(x, 0.0, 1.0); },
      [](Rng& rng) { return uniform01(rng); },
      [](double x) { return x >= 0.0 && x <= 1.0 ? 1.0 : 0.0; });
}

Distribution Distribution::power(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("power distribution needs k > 0");
  return Distribution(
      "power(" + std::to_string(k) + ")",
      [k](double x) { return std::pow(std::clamp(x, 0.0, 1.0), k); },
      [k](Rng& rng) { return std::pow(uniform01(rng), 1.0 / k); },
      [k](double x) {
        if (x < 0.0 || x > 1.0) return 0.0;
        return k * std::pow(x, k - 1.0);
      });
}

double best_response_threshold(double t_opp, Cost c, bool regulated) {
  if (!(t_opp >= 0.0 && t_opp <= 1.0)) {
    throw std::invalid_argument("opponent threshold " + std::to_string(t_opp) +
                                " outside [0,1]");
  }
  // The subsidy halves the effective cost in both branches.
  const double k = regulated ? c.value() / 2.0 : c.value();
  double response;
  if (t_opp <= std::sqrt(k)) {
    response = std::sqrt(std::max(0.0, 2.0 * k - t_opp * t_opp));
  } else {
    response = k / t_opp;
  }
  return std::clamp(response, 0.0, 1.0);
}

ThresholdPair nash_threshold(Cost c, bool regulated) {
  const double t = std::sqrt(regulated ? c.value() / 2.0 : c.value());
  return ThresholdPair(t, t);
}

FixedPointResult iterate_best_response(double start, Cost c, bool regulated,
                                       double damping, int max_iterations,
                                       double tolerance) {
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("damping must lie in (0,1]");
  }
  FixedPointResult result;
  result.threshold = ThresholdStrategy(start).value();
  for (int k = 0; k < max_iterations; ++k) {
    const double response =
        best_response_threshold(result.threshold, c, regulated);
    const double next =
        (1.0 - damping) * result.threshold + damping * response;
    result.iterations = k + 1;
    const bool settled = std::abs(next - result.threshold) <= tolerance;
    result.threshold = next;
    if (settled) {
      result.converged = true;
      break;
    }
  }
  return result;
}

ThresholdWelfare welfare_thresholds(const ThresholdPair& tp, Cost c) {
  const double x = c.value();
  const double t1 = tp.t1.value();
  const double t2 = tp.t2.value();
  ThresholdWelfare w;
  if (t1 < t2) {
    const double shared = 3.0 * t1 * t1 * t2 + t2 * t2 * t2;
    w.server1 = (4.0 + 6.0 * x * (t1 - 1.0) - shared) / 6.0;
    w.server2 = (4.0 + 6.0 * x * (t2 - 1.0) - shared) / 6.0;
    w.total = 4.0 / 3.0 + x * (t1 + t2 - 2.0) -
              (3.0 * t1 * t1 + t2 * t2) * t2 / 3.0;
  } else {
    // Mirror image of the t1 < t2 forms with the servers' roles exchanged.
    const double shared = 3.0 * t2 * t2 * t1 + t1 * t1 * t1;
    w.server1 = (4.0 + 6.0 * x * (t1 - 1.0) - shared) / 6.0;
    w.server2 = (4.0 + 6.0 * x * (t2 - 1.0) - shared) / 6.0;
    w.total = 4.0 / 3.0 + x * (t1 + t2 - 2.0) -
              t1 * (t1 * t1 + 3.0 * t2 * t2) / 3.0;
  }
  return w;
}

ThresholdPair optimal_thresholds(Cost c) {
  const double t = std::sqrt(c.value() / 2.0);
  return ThresholdPair(t, t);
}

double nash_threshold_general(const Distribution& dist, Cost c) {
  const double target = c.value();
  auto excess = [&](double x) { return x * dist.cdf(x) - target; };
  if (excess(0.0) >= 0.0) return 0.0;
  // Invariant: excess(lo) < 0 <= excess(hi).
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (std::abs(excess(hi)) > 1e-10) {
    throw std::runtime_error("threshold equation x F(x) = c did not converge "
                             "for distribution '" + dist.name() + "'");
  }
  return hi;
}

}  // namespace twoserver
