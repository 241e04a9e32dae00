#include "cli.h"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "twoserver/bayesian.h"
#include "twoserver/cooperative.h"
#include "twoserver/full_info.h"
#include "twoserver/oracle.h"
#include "twoserver/sweep.h"
#include "twoserver/verification.h"

namespace twoserver::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string describe(MixedAction m) {
  if (m.sigma() == 1.0) return "active";
  if (m.sigma() == 0.0) return "inactive";
  return format_number(m.sigma());
}

std::string describe(const StrategyProfile& prof) {
  return "(" + describe(prof.a1) + ", " + describe(prof.a2) + ")";
}

std::string describe(const PureProfile& p) {
  return describe(StrategyProfile::pure(p));
}

ordered_json to_json(const StrategyProfile& prof) {
  return ordered_json::array({prof.a1.sigma(), prof.a2.sigma()});
}

struct EquilibriumArgs {
  std::string which;
  std::optional<double> p1;
  std::optional<double> p2;
  double c = 0.0;
  bool regulated = false;
  std::string format = "text";
};

State require_state(const EquilibriumArgs& args) {
  if (!args.p1 || !args.p2) {
    throw UsageError("case " + args.which + " needs --p1 and --p2");
  }
  return State(*args.p1, *args.p2);
}

std::string equilibrium_report(const EquilibriumArgs& args) {
  const Cost cost(args.c);
  std::ostringstream text;
  ordered_json doc;
  doc["case"] = args.which;
  doc["c"] = args.c;
  doc["regulated"] = args.regulated;

  if (args.which == "I") {
    const State s = require_state(args);
    const StrategyProfile prof = optimal_profile(s, cost);
    const double welfare = pointwise_welfare(s, prof, cost);
    doc["p1"] = s.p1();
    doc["p2"] = s.p2();
    doc["profile"] = to_json(prof);
    doc["welfare"] = welfare;
    doc["expected_welfare"] = welfare_case1(cost);
    text << "case I: cooperative servers with communication\n"
         << "state: p1=" << format_number(s.p1())
         << " p2=" << format_number(s.p2())
         << " c=" << format_number(args.c) << "\n"
         << "optimal profile: " << describe(prof) << "\n"
         << "welfare: " << format_number(welfare) << "\n"
         << "expected welfare: " << format_number(welfare_case1(cost)) << "\n";
  } else if (args.which == "II") {
    const ThresholdPair ne = nash_threshold(cost, args.regulated);
    const ThresholdPair best = optimal_thresholds(cost);
    const double ne_welfare = welfare_thresholds(ne, cost).total;
    const double best_welfare = welfare_thresholds(best, cost).total;
    doc["thresholds"] = {ne.t1.value(), ne.t2.value()};
    doc["expected_welfare"] = ne_welfare;
    doc["optimal_thresholds"] = {best.t1.value(), best.t2.value()};
    doc["optimal_welfare"] = best_welfare;
    text << "case II: uncooperative servers without communication"
         << (args.regulated ? " (subsidy c/2)" : "") << "\n"
         << "c=" << format_number(args.c) << "\n"
         << "nash thresholds: (" << format_number(ne.t1.value()) << ", "
         << format_number(ne.t2.value()) << ")\n"
         << "expected welfare: " << format_number(ne_welfare) << "\n"
         << "optimal thresholds: (" << format_number(best.t1.value()) << ", "
         << format_number(best.t2.value()) << ")\n"
         << "optimal welfare: " << format_number(best_welfare) << "\n";
  } else {
    const State s = require_state(args);
    doc["p1"] = s.p1();
    doc["p2"] = s.p2();
    text << "case III: uncooperative servers with communication"
         << (args.regulated ? " (side payment)" : "") << "\n"
         << "state: p1=" << format_number(s.p1())
         << " p2=" << format_number(s.p2())
         << " c=" << format_number(args.c) << "\n";
    if (args.regulated) {
      const StrategyProfile prof = regulated_equilibrium(s, cost);
      const double welfare = pointwise_welfare(s, prof, cost);
      doc["profile"] = to_json(prof);
      doc["welfare"] = welfare;
      doc["expected_welfare"] = welfare_case1(cost);
      text << "regulated equilibrium: " << describe(prof) << "\n"
           << "welfare: " << format_number(welfare) << "\n"
           << "expected welfare: " << format_number(welfare_case1(cost))
           << "\n";
    } else {
      const EquilibriumSet set = classify_state(s, cost);
      const StrategyProfile best =
          select_equilibrium(s, cost, SelectionPolicy::kMaxWelfare);
      const StrategyProfile worst =
          select_equilibrium(s, cost, SelectionPolicy::kMinWelfare);
      doc["region"] = std::string(to_string(set.kind));
      ordered_json pure = ordered_json::array();
      std::string listed;
      for (const PureProfile& p : set.pure_equilibria) {
        pure.push_back(to_json(StrategyProfile::pure(p)));
        listed += (listed.empty() ? "" : ", ") + describe(p);
      }
      doc["pure_equilibria"] = pure;
      doc["mixed_equilibrium"] =
          set.mixed ? ordered_json::array({set.mixed->sigma1,
                                           set.mixed->sigma2})
                    : ordered_json(nullptr);
      doc["max_welfare_profile"] = to_json(best);
      doc["max_welfare"] = pointwise_welfare(s, best, cost);
      doc["min_welfare_profile"] = to_json(worst);
      doc["min_welfare"] = pointwise_welfare(s, worst, cost);
      doc["expected_welfare_max"] = welfare_case3_max(cost);
      doc["expected_welfare_min"] = welfare_case3_min(cost);
      text << "region: " << to_string(set.kind) << "\n"
           << "pure equilibria: " << listed << "\n";
      if (set.mixed) {
        text << "mixed equilibrium: (" << format_number(set.mixed->sigma1)
             << ", " << format_number(set.mixed->sigma2) << ")\n";
      }
      text << "max-welfare selection: " << describe(best) << " welfare "
           << format_number(pointwise_welfare(s, best, cost)) << "\n"
           << "min-welfare selection: " << describe(worst) << " welfare "
           << format_number(pointwise_welfare(s, worst, cost)) << "\n"
           << "expected welfare: max "
           << format_number(welfare_case3_max(cost)) << " min "
           << format_number(welfare_case3_min(cost)) << "\n";
    }
  }
  return args.format == "json" ? doc.dump(2) + "\n" : text.str();
}

std::string best_response_report(double t_opp, double c, bool regulated,
                                 double step, const std::string& format) {
  const Cost cost(c);
  const double closed = best_response_threshold(t_opp, cost, regulated);
  const double grid = grid_best_response(t_opp, cost, regulated, step);
  const ThresholdPair ne = nash_threshold(cost, regulated);
  if (format == "json") {
    ordered_json doc{{"t_opp", t_opp},
                     {"c", c},
                     {"regulated", regulated},
                     {"best_response", closed},
                     {"grid_best_response", grid},
                     {"grid_step", step},
                     {"nash_threshold", ne.t1.value()}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "opponent threshold: " << format_number(t_opp)
      << " c=" << format_number(c) << (regulated ? " (subsidy c/2)" : "")
      << "\n"
      << "best response: " << format_number(closed) << "\n"
      << "grid best response (step " << format_number(step)
      << "): " << format_number(grid) << "\n"
      << "nash threshold: " << format_number(ne.t1.value()) << "\n";
  return out.str();
}

void emit(const std::string& content, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) throw UsageError("failed writing '" + path + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibria and welfare of the two-server service game"};
  app.require_subcommand(1);

  // sweep
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "welfare of every regime over a cost grid");
  std::optional<double> single_c;
  CostGrid grid;
  std::string sweep_format = "csv";
  std::string sweep_out;
  sweep_cmd->add_option("--c", single_c, "single cost value");
  sweep_cmd->add_option("--c-start", grid.start, "first cost")
      ->capture_default_str();
  sweep_cmd->add_option("--c-stop", grid.stop, "last cost")
      ->capture_default_str();
  sweep_cmd->add_option("--c-step", grid.step, "cost increment")
      ->capture_default_str();
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

  // equilibrium
  CLI::App* eq_cmd = app.add_subcommand(
      "equilibrium", "strategy or equilibrium set for one regime");
  EquilibriumArgs eq;
  std::string eq_out;
  eq_cmd->add_option("--case", eq.which, "I, II or III")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III"}));
  eq_cmd->add_option("--p1", eq.p1, "server 1 success probability");
  eq_cmd->add_option("--p2", eq.p2, "server 2 success probability");
  eq_cmd->add_option("--c", eq.c, "cost of being active")->required();
  eq_cmd->add_flag("--regulated", eq.regulated, "apply the regulation");
  eq_cmd->add_option("--format", eq.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  eq_cmd->add_option("--out", eq_out, "output file (default stdout)");

  // best-response
  CLI::App* br_cmd = app.add_subcommand(
      "best-response", "threshold best response without communication");
  double t_opp = 0.0;
  double br_c = 0.0;
  bool br_regulated = false;
  double br_step = 1e-3;
  std::string br_format = "text";
  std::string br_out;
  br_cmd->add_option("--t-opp", t_opp, "opponent threshold")->required();
  br_cmd->add_option("--c", br_c, "cost of being active")->required();
  br_cmd->add_flag("--regulated", br_regulated, "subsidy payoffs");
  br_cmd->add_option("--step", br_step, "grid step of the oracle")
      ->capture_default_str();
  br_cmd->add_option("--format", br_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  br_cmd->add_option("--out", br_out, "output file (default stdout)");

  // verify
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check every closed form against oracles");
  VerifyConfig verify;
  std::string verify_out;
  verify_cmd->add_option("--samples", verify.samples, "Monte-Carlo samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "root seed")
      ->capture_default_str();
  verify_cmd->add_option("--out", verify_out, "output file (default stdout)");
  verify_cmd->add_option("--inject-fault", verify.fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep_cmd) {
      if (single_c) grid = {*single_c, *single_c, 1.0};
      const std::vector<SweepRow> rows = sweep(grid);
      emit(sweep_format == "json" ? to_json(rows) : to_csv(rows), sweep_out,
           out);
    } else if (*eq_cmd) {
      emit(equilibrium_report(eq), eq_out, out);
    } else if (*br_cmd) {
      emit(best_response_report(t_opp, br_c, br_regulated, br_step, br_format),
           br_out, out);
    } else if (*verify_cmd) {
      const std::vector<CheckResult> results = run_verification(verify);
      emit(format_verification(results, verify), verify_out, out);
      return all_passed(results) ? kExitOk : kExitVerificationFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace twoserver::cli
