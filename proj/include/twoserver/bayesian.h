#ifndef TWOSERVER_BAYESIAN_H_
#define TWOSERVER_BAYESIAN_H_

#include <functional>
#include <string>

#include "twoserver/cooperative.h"
#include "twoserver/game_core.h"
#include "twoserver/random.h"

// Uncooperative servers without communication. Each server sees only its own
// p and knows that the other is active iff its p reaches a public threshold.
// Best responses are thresholds too, and the game reduces to a map on
// thresholds.

namespace twoserver {

// Active iff own p >= t. A threshold of 1 means "effectively never active"
// since p == 1 has probability zero under a continuous distribution.
class ThresholdStrategy {
 public:
  explicit ThresholdStrategy(double t);

  double value() const { return t_; }
  Action action_at(double p) const {
    return p >= t_ ? Action::kActive : Action::kInactive;
  }

  bool operator==(const ThresholdStrategy&) const = default;

 private:
  double t_;
};

struct ThresholdPair {
  ThresholdStrategy t1;
  ThresholdStrategy t2;

  ThresholdPair(double first, double second) : t1(first), t2(second) {}

  const ThresholdStrategy& of(int server) const {
    return server == 1 ? t1 : t2;
  }
  bool operator==(const ThresholdPair&) const = default;
};

// The pure profile both threshold rules produce at state s.
StrategyProfile threshold_profile(const ThresholdPair& tp, const State& s);

// Distribution of a server's success probability on [0,1]. The density is
// optional; it is only needed for quadrature-based checks.
class Distribution {
 public:
  using Cdf = std::function<double(double)>;
  using Pdf = std::function<double(double)>;
  using Sampler = std::function<double(Rng&)>;

  // Throws std::invalid_argument if cdf is decreasing on a 1e-3 grid or
  // cdf(1) differs from 1 by more than 1e-12.
  Distribution(std::string name, Cdf cdf, Sampler sampler, Pdf pdf = {});

  static Distribution uniform();
  // cdf(x) = x^k for k > 0, sampled by inversion.
  static Distribution power(double k);

  const std::string& name() const { return name_; }
  double cdf(double x) const { return cdf_(x); }
  double sample(Rng& rng) const { return sampler_(rng); }
  bool has_pdf() const { return static_cast<bool>(pdf_); }
  double pdf(double x) const { return pdf_(x); }

 private:
  std::string name_;
  Cdf cdf_;
  Sampler sampler_;
  Pdf pdf_;
};

// Threshold best response to an opponent whose p is uniform on [0,1] and who
// uses threshold t_opp:
//   unregulated: sqrt(2c - t^2) if t <= sqrt(c), else c/t
//   subsidy:     sqrt(c - t^2)  if t <= sqrt(c/2), else c/(2t)
// clamped to [0,1]. Throws std::invalid_argument if t_opp is outside [0,1].
double best_response_threshold(double t_opp, Cost c, bool regulated);

// (sqrt(c), sqrt(c)) unregulated, (sqrt(c/2), sqrt(c/2)) under the subsidy.
ThresholdPair nash_threshold(Cost c, bool regulated);

struct FixedPointResult {
  double threshold = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Symmetric best-response iteration t <- (1 - damping) t + damping BR(t),
// stopping once successive iterates differ by at most `tolerance`.
//
// The best-response map has slope -1 at the equilibrium, so the undamped
// iteration (damping = 1) only creeps towards it at rate O(1/k). With
// damping = 1/2 the map is a contraction with factor <= 1/2 and zero slope at
// the fixed point.
FixedPointResult iterate_best_response(double start, Cost c, bool regulated,
                                       double damping = 0.5,
                                       int max_iterations = 100,
                                       double tolerance = 1e-13);

struct ThresholdWelfare {
  double server1 = 0.0;
  double server2 = 0.0;
  double total = 0.0;
};

// Expected payoffs of both servers and their sum when both use thresholds and
// p1, p2 are i.i.d. uniform.
ThresholdWelfare welfare_thresholds(const ThresholdPair& tp, Cost c);

// Welfare-maximizing threshold pair, (sqrt(c/2), sqrt(c/2)).
ThresholdPair optimal_thresholds(Cost c);

// Symmetric threshold equilibrium when both p's follow `dist`: the smallest
// h in [0,1] with h * F(h) = c, found by bisection. Throws std::runtime_error
// if |h F(h) - c| > 1e-10 after 200 halvings (possible only when F jumps).
double nash_threshold_general(const Distribution& dist, Cost c);

}  // namespace twoserver

#endif  // TWOSERVER_BAYESIAN_H_
