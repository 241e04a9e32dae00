#include "twoserver/game_core.h"

#include <stdexcept>
#include <string>

namespace twoserver {
namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

// Moves `amount` from the inactive server to the lone active server.
PayoffPair transfer_to_lone_active(PayoffPair base, Action a1, Action a2,
                                   double amount) {
  if (a1 == Action::kActive && a2 == Action::kInactive) {
    base.u1 += amount;
    base.u2 -= amount;
  } else if (a1 == Action::kInactive && a2 == Action::kActive) {
    base.u1 -= amount;
    base.u2 += amount;
  }
  return base;
}

}  // namespace

State::State(double p1, double p2) : p1_(p1), p2_(p2) {
  if (!in_unit_interval(p1) || !in_unit_interval(p2)) {
    throw std::invalid_argument("state (" + std::to_string(p1) + ", " +
                                std::to_string(p2) + ") outside [0,1]^2");
  }
}

Cost::Cost(double c) : c_(c) {
  if (!in_unit_interval(c)) {
    throw std::invalid_argument("cost " + std::to_string(c) +
                                " outside [0,1]");
  }
}

MixedAction::MixedAction(double sigma) : sigma_(sigma) {
  if (!in_unit_interval(sigma)) {
    throw std::invalid_argument("mixed action " + std::to_string(sigma) +
                                " outside [0,1]");
  }
}

MixedAction MixedAction::pure(Action a) {
  return MixedAction(a == Action::kActive ? 1.0 : 0.0);
}

std::string_view to_string(Action a) {
  return a == Action::kActive ? "active" : "inactive";
}

std::string_view to_string(PayoffVariant v) {
  switch (v) {
    case PayoffVariant::kUnregulated:
      return "unregulated";
    case PayoffVariant::kCase2Subsidy:
      return "case2_reg";
    case PayoffVariant::kCase3SidePayment:
      return "case3_reg";
  }
  return "unknown";
}

PayoffPair payoff(const State& s, Action a1, Action a2, Cost c) {
  const double cost = c.value();
  const bool active1 = a1 == Action::kActive;
  const bool active2 = a2 == Action::kActive;
  if (active1 && active2) {
    const double shared = s.max() - cost;
    return {shared, shared};
  }
  if (active1) return {s.p1() - cost, s.p1()};
  if (active2) return {s.p2(), s.p2() - cost};
  return {0.0, 0.0};
}

PayoffPair payoff_case2_regulated(const State& s, Action a1, Action a2,
                                  Cost c) {
  return transfer_to_lone_active(payoff(s, a1, a2, c), a1, a2,
                                 c.value() / 2.0);
}

PayoffPair payoff_case3_regulated(const State& s, Action a1, Action a2,
                                  Cost c) {
  const double cost = c.value();
  if (s.max() < cost / 2.0) return payoff(s, a1, a2, c);
  const double p1 = s.p1();
  const double p2 = s.p2();
  // Written out as in the regulated payoff table rather than as a transfer so
  // that the table entries are reproduced exactly.
  if (a1 == Action::kActive && a2 == Action::kInactive) {
    return {(p1 - p2) / 2.0, (3.0 * p1 + p2) / 2.0 - cost};
  }
  if (a1 == Action::kInactive && a2 == Action::kActive) {
    return {(p1 + 3.0 * p2) / 2.0 - cost, (p2 - p1) / 2.0};
  }
  return payoff(s, a1, a2, c);
}

PayoffPair payoff(PayoffVariant variant, const State& s, Action a1, Action a2,
                  Cost c) {
  switch (variant) {
    case PayoffVariant::kUnregulated:
      return payoff(s, a1, a2, c);
    case PayoffVariant::kCase2Subsidy:
      return payoff_case2_regulated(s, a1, a2, c);
    case PayoffVariant::kCase3SidePayment:
      return payoff_case3_regulated(s, a1, a2, c);
  }
  throw std::invalid_argument("unknown payoff variant");
}

PayoffPair payoff_mixed(const State& s, MixedAction m1, MixedAction m2, Cost c,
                        PayoffVariant variant) {
  PayoffPair total;
  for (const Action a1 : {Action::kActive, Action::kInactive}) {
    const double w1 = a1 == Action::kActive ? m1.sigma() : 1.0 - m1.sigma();
    if (w1 == 0.0) continue;
    for (const Action a2 : {Action::kActive, Action::kInactive}) {
      const double w2 = a2 == Action::kActive ? m2.sigma() : 1.0 - m2.sigma();
      if (w2 == 0.0) continue;
      const PayoffPair u = payoff(variant, s, a1, a2, c);
      total.u1 += w1 * w2 * u.u1;
      total.u2 += w1 * w2 * u.u2;
    }
  }
  return total;
}

}  // namespace twoserver
