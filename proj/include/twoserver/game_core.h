#ifndef TWOSERVER_GAME_CORE_H_
#define TWOSERVER_GAME_CORE_H_

#include <string_view>

// Stage-game payoffs of the two-server service game.
//
// Each server i knows its own success probability p_i and chooses to be
// Active (available, paying a one-off cost c) or Inactive. A successful
// transmission rewards both servers with 1. If both are active the job goes to
// the server with the higher p. Expected payoffs (server 1, server 2):
//
//                      server 2 Active           server 2 Inactive
//   server 1 Active    (max-c, max-c)            (p1-c, p1)
//   server 1 Inactive  (p2, p2-c)                (0, 0)
//
// Two regulated variants redistribute payoffs without changing their sum:
//   - subsidy: the inactive server pays the lone active server c/2;
//   - side payment: when max{p1,p2} >= c/2, the inactive server pays the lone
//     active server c - (p1+p2)/2.

namespace twoserver {

// Success probabilities (p1, p2), each in [0, 1].
class State {
 public:
  State(double p1, double p2);

  double p1() const { return p1_; }
  double p2() const { return p2_; }
  // server is 1 or 2.
  double p(int server) const { return server == 1 ? p1_ : p2_; }
  double max() const { return p1_ >= p2_ ? p1_ : p2_; }
  double min() const { return p1_ <= p2_ ? p1_ : p2_; }
  State swapped() const { return State(p2_, p1_); }

  bool operator==(const State&) const = default;

 private:
  double p1_;
  double p2_;
};

// One-off cost of being active, in [0, 1].
class Cost {
 public:
  explicit Cost(double c);
  double value() const { return c_; }

 private:
  double c_;
};

enum class Action { kInactive, kActive };

std::string_view to_string(Action a);

// Probability of being Active.
class MixedAction {
 public:
  explicit MixedAction(double sigma);
  static MixedAction pure(Action a);

  double sigma() const { return sigma_; }
  bool is_pure() const { return sigma_ == 0.0 || sigma_ == 1.0; }

  bool operator==(const MixedAction&) const = default;

 private:
  double sigma_;
};

struct PureProfile {
  Action a1;
  Action a2;

  bool operator==(const PureProfile&) const = default;
};

struct PayoffPair {
  double u1 = 0.0;
  double u2 = 0.0;

  double of(int server) const { return server == 1 ? u1 : u2; }
  double sum() const { return u1 + u2; }
  bool operator==(const PayoffPair&) const = default;
};

enum class PayoffVariant {
  kUnregulated,
  kCase2Subsidy,       // c/2 from the inactive to the lone active server
  kCase3SidePayment,   // c - (p1+p2)/2 when max{p1,p2} >= c/2
};

std::string_view to_string(PayoffVariant v);

PayoffPair payoff(const State& s, Action a1, Action a2, Cost c);
PayoffPair payoff_case2_regulated(const State& s, Action a1, Action a2, Cost c);
PayoffPair payoff_case3_regulated(const State& s, Action a1, Action a2, Cost c);

PayoffPair payoff(PayoffVariant variant, const State& s, Action a1, Action a2,
                  Cost c);

// Bilinear extension over independent randomizations of the two servers.
PayoffPair payoff_mixed(const State& s, MixedAction m1, MixedAction m2, Cost c,
                        PayoffVariant variant = PayoffVariant::kUnregulated);

}  // namespace twoserver

#endif  // TWOSERVER_GAME_CORE_H_
