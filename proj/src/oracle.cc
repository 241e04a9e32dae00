#include "twoserver/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twoserver {
namespace {

// Welford accumulator.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double std_error() const {
    if (n_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(n_ - 1);
    return std::sqrt(var / static_cast<double>(n_));
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

State oriented_state(int server, double own_p, double other_p) {
  return server == 1 ? State(own_p, other_p) : State(other_p, own_p);
}

// u_i(Active, a_opp) - u_i(Inactive, a_opp) at the state (own_p, other_p).
double stage_gain(int server, double own_p, double other_p, Action opponent,
                  Cost c, PayoffVariant variant) {
  const State s = oriented_state(server, own_p, other_p);
  const auto profile = [&](Action own) {
    return server == 1 ? payoff(variant, s, own, opponent, c)
                       : payoff(variant, s, opponent, own, c);
  };
  return profile(Action::kActive).of(server) -
         profile(Action::kInactive).of(server);
}

std::vector<double> sorted_breaks(double a, double b,
                                  std::vector<double> breakpoints) {
  std::vector<double> points{a, b};
  for (const double x : breakpoints) {
    if (x > a && x < b) points.push_back(x);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

void check_server(int server) {
  if (server != 1 && server != 2) {
    throw std::invalid_argument("server must be 1 or 2");
  }
}

}  // namespace

Estimate mc_welfare(const StrategyMap& strategy, Cost c, const Distribution& d1,
                    const Distribution& d2, std::size_t n, std::uint64_t seed,
                    PayoffVariant variant) {
  if (n == 0) throw std::invalid_argument("mc_welfare needs n >= 1");
  Rng rng(seed);
  RunningStats stats;
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = d1.sample(rng);
    const double p2 = d2.sample(rng);
    const State s(p1, p2);
    stats.add(pointwise_welfare(s, strategy(s), c, variant));
  }
  return {stats.mean(), stats.std_error(), stats.count(), seed};
}

Estimate mc_welfare_sharded(const StrategyMap& strategy, Cost c,
                            const Distribution& d1, const Distribution& d2,
                            std::size_t n, std::size_t shards,
                            std::uint64_t seed, PayoffVariant variant) {
  if (shards == 0 || n < shards) {
    throw std::invalid_argument("need 1 <= shards <= n");
  }
  std::vector<Estimate> parts;
  parts.reserve(shards);
  for (std::size_t k = 0; k < shards; ++k) {
    const std::size_t size = n / shards + (k < n % shards ? 1 : 0);
    parts.push_back(
        mc_welfare(strategy, c, d1, d2, size, derive_seed(seed, k), variant));
  }
  return pool_estimates(parts, seed);
}

Estimate pool_estimates(std::span<const Estimate> parts, std::uint64_t seed) {
  std::size_t total = 0;
  double weighted = 0.0;
  for (const Estimate& e : parts) {
    total += e.n;
    weighted += e.mean * static_cast<double>(e.n);
  }
  if (total == 0) throw std::invalid_argument("no samples to pool");
  const double mean = weighted / static_cast<double>(total);
  // Total sum of squares = within-part + between-part.
  double ss = 0.0;
  for (const Estimate& e : parts) {
    const double nk = static_cast<double>(e.n);
    const double var_k = e.std_error * e.std_error * nk;  // sample variance
    ss += (nk - 1.0) * var_k + nk * (e.mean - mean) * (e.mean - mean);
  }
  const double n = static_cast<double>(total);
  const double std_error = total > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, std_error, total, seed};
}

double quadrature(const std::function<double(double)>& f, double a, double b,
                  int panels) {
  if (panels < 1) throw std::invalid_argument("quadrature needs panels >= 1");
  if (a > b) throw std::invalid_argument("quadrature needs a <= b");
  if (a == b) return 0.0;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double left = a + k * h;
    const double right = k + 1 == panels ? b : a + (k + 1) * h;
    const double mid = 0.5 * (left + right);
    sum += (right - left) / 6.0 * (f(left) + 4.0 * f(mid) + f(right));
  }
  return sum;
}

double piecewise_quadrature(const std::function<double(double)>& f, double a,
                            double b, std::vector<double> breakpoints,
                            int panels) {
  const std::vector<double> points =
      sorted_breaks(a, b, std::move(breakpoints));
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    sum += quadrature(f, points[k], points[k + 1], panels);
  }
  return sum;
}

double interim_gain(double own_p, int server, double opp_threshold, Cost c,
                    PayoffVariant variant, const Distribution& opponent,
                    int panels) {
  check_server(server);
  if (!opponent.has_pdf()) {
    throw std::invalid_argument("distribution '" + opponent.name() +
                                "' has no density for quadrature");
  }
  const ThresholdStrategy rule(opp_threshold);
  // The opponent's action jumps at its threshold, so each piece is integrated
  // with the action fixed by the piece's midpoint.
  const std::vector<double> points =
      sorted_breaks(0.0, 1.0, {opp_threshold, own_p});
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k];
    const double b = points[k + 1];
    const Action opp_action = rule.action_at(0.5 * (a + b));
    total += quadrature(
        [&](double q) {
          return stage_gain(server, own_p, q, opp_action, c, variant) *
                 opponent.pdf(q);
        },
        a, b, panels);
  }
  return total;
}

double grid_best_response(double opp_threshold, Cost c, bool regulated,
                          double step) {
  if (!(step > 0.0 && step <= 0.01)) {
    throw std::invalid_argument("grid_best_response needs 0 < step <= 0.01");
  }
  const PayoffVariant variant =
      regulated ? PayoffVariant::kCase2Subsidy : PayoffVariant::kUnregulated;
  const Distribution uniform = Distribution::uniform();
  // Against a uniform opponent the interim integrand is linear on each piece,
  // so two Simpson panels per piece are already exact.
  constexpr int kPanels = 2;
  const auto count = static_cast<long>(std::floor(1.0 / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double p = std::min(1.0, static_cast<double>(k) * step);
    if (interim_gain(p, 1, opp_threshold, c, variant, uniform, kPanels) >=
        -1e-12) {
      return p;
    }
  }
  return 1.0;
}

RegionBreakdown threshold_region_payoffs(const ThresholdPair& tp, Cost c,
                                         int server, int panels) {
  check_server(server);
  const double t1 = tp.t1.value();
  const double t2 = tp.t2.value();
  const auto u = [&](double p1, double p2, Action a1, Action a2) {
    return payoff(State(p1, p2), a1, a2, c).of(server);
  };
  constexpr Action kA = Action::kActive;
  constexpr Action kI = Action::kInactive;

  // Iterated integral over outer x in [x_lo, x_hi] and inner y in
  // [lo(x), hi(x)]; empty inner ranges contribute nothing.
  const auto iterated = [&](double x_lo, double x_hi,
                            std::vector<double> outer_breaks,
                            const std::function<double(double)>& inner_lo,
                            const std::function<double(double)>& inner_hi,
                            const std::function<double(double, double)>& f) {
    if (x_hi <= x_lo) return 0.0;
    return piecewise_quadrature(
        [&](double x) {
          const double lo = inner_lo(x);
          const double hi = inner_hi(x);
          if (hi <= lo) return 0.0;
          return quadrature([&](double y) { return f(x, y); }, lo, hi, panels);
        },
        x_lo, x_hi, std::move(outer_breaks), panels);
  };
  const auto constant = [](double v) {
    return [v](double) { return v; };
  };

  RegionBreakdown r;
  // Outer p1, inner p2.
  r.both_inactive = iterated(0.0, t1, {}, constant(0.0), constant(t2),
                             [&](double p1, double p2) {
                               return u(p1, p2, kI, kI);
                             });
  r.only_server1 = iterated(t1, 1.0, {}, constant(0.0), constant(t2),
                            [&](double p1, double p2) {
                              return u(p1, p2, kA, kI);
                            });
  r.only_server2 = iterated(0.0, t1, {}, constant(t2), constant(1.0),
                            [&](double p1, double p2) {
                              return u(p1, p2, kI, kA);
                            });
  // Outer p2, inner p1.
  r.both_active_p2_leads = iterated(
      t2, 1.0, {t1}, constant(t1), [](double p2) { return p2; },
      [&](double p2, double p1) { return u(p1, p2, kA, kA); });
  r.both_active_p1_leads = iterated(
      t2, 1.0, {t1}, [t1](double p2) { return std::max(t1, p2); },
      constant(1.0), [&](double p2, double p1) { return u(p1, p2, kA, kA); });
  return r;
}

double deviation_gain(const State& s, const StrategyProfile& prof, Cost c,
                      PayoffVariant variant, DeviationWitness* witness) {
  const PayoffPair current = payoff_mixed(s, prof.a1, prof.a2, c, variant);
  double best = -std::numeric_limits<double>::infinity();
  for (const int server : {1, 2}) {
    for (const Action a : {Action::kActive, Action::kInactive}) {
      const MixedAction pure = MixedAction::pure(a);
      const PayoffPair deviated =
          server == 1 ? payoff_mixed(s, pure, prof.a2, c, variant)
                      : payoff_mixed(s, prof.a1, pure, c, variant);
      const double gain = deviated.of(server) - current.of(server);
      if (gain > best) {
        best = gain;
        if (witness != nullptr) *witness = {server, a, s, std::nullopt};
      }
    }
  }
  return best;
}

DeviationReport epsilon_nash_check(const ThresholdPair& tp, Cost c,
                                   CheckMode mode, double eps,
                                   std::uint64_t seed,
                                   const Distribution& dist,
                                   const ThresholdCheckOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (options.grid_points < 2) {
    throw std::invalid_argument("threshold check needs >= 2 grid points");
  }
  DeviationReport report;
  report.max_gain = 0.0;
  for (const int server : {1, 2}) {
    const ThresholdStrategy& own = tp.of(server);
    const double opp_threshold = tp.of(3 - server).value();

    std::vector<double> draws;
    if (mode == CheckMode::kSampled) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(server)));
      draws.resize(options.samples);
      for (double& q : draws) q = dist.sample(rng);
    }
    const ThresholdStrategy opp_rule(opp_threshold);
    // Gain of Active over Inactive at own p, in the units compared to eps.
    const auto gain_at = [&](double p) -> std::pair<double, double> {
      if (mode == CheckMode::kAnalyticQuadrature) {
        return {interim_gain(p, server, opp_threshold, c, options.variant,
                             dist),
                0.0};
      }
      RunningStats stats;
      for (const double q : draws) {
        stats.add(stage_gain(server, p, q, opp_rule.action_at(q), c,
                             options.variant));
      }
      return {stats.mean(), stats.std_error()};
    };
    const auto scaled = [&](double contradiction, double se) {
      if (mode == CheckMode::kAnalyticQuadrature) return contradiction;
      if (se > 0.0) return contradiction / se;
      return contradiction > 0.0 ? std::numeric_limits<double>::infinity()
                                 : 0.0;
    };
    const auto record = [&](double measure, double p, Action deviation) {
      if (measure > report.max_gain) {
        report.max_gain = measure;
        report.witness = DeviationWitness{server, deviation, std::nullopt, p};
      }
    };

    std::vector<double> grid;
    grid.reserve(options.grid_points + 1);
    for (int k = 0; k < options.grid_points; ++k) {
      grid.push_back(static_cast<double>(k) / (options.grid_points - 1));
    }
    grid.push_back(own.value());
    for (const double p : grid) {
      const auto [gain, se] = gain_at(p);
      if (own.action_at(p) == Action::kActive) {
        record(scaled(-gain, se), p, Action::kInactive);
      } else {
        record(scaled(gain, se), p, Action::kActive);
      }
      if (p == own.value()) {
        // Left limit: own p just below the threshold, where the rule says
        // Inactive.
        record(scaled(gain, se), p, Action::kActive);
      }
    }
  }
  report.passed = report.max_gain <= eps;
  return report;
}

DeviationReport epsilon_nash_check(const StrategyMap& strategy, Cost c,
                                   CheckMode mode, double eps,
                                   std::uint64_t seed, PayoffVariant variant,
                                   std::size_t samples) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  DeviationReport report;
  report.max_gain = 0.0;
  const auto visit = [&](const State& s) {
    DeviationWitness witness;
    const double gain = deviation_gain(s, strategy(s), c, variant, &witness);
    if (gain > report.max_gain) {
      report.max_gain = gain;
      report.witness = witness;
    }
  };
  if (mode == CheckMode::kAnalyticQuadrature) {
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) visit(State(i / 100.0, j / 100.0));
    }
  } else {
    Rng rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
      const double p1 = uniform01(rng);
      const double p2 = uniform01(rng);
      visit(State(p1, p2));
    }
  }
  report.passed = report.max_gain <= eps;
  return report;
}

}  // namespace twoserver
