#ifndef TWOSERVER_SWEEP_H_
#define TWOSERVER_SWEEP_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twoserver/game_core.h"

// Welfare curves of all regimes as a function of the cost, written as CSV or
// JSON. Numbers are rounded to 12 significant digits and printed in their
// shortest round-trip form, so the files are byte-stable and parse back to
// exactly the rows held in memory.

namespace twoserver {

inline constexpr std::string_view kSweepCsvHeader =
    "c,case1,case2_ne,case2_opt,case3_max,case3_min,reg_case2,reg_case3";

struct CostGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;
};

// Grid values start + k * step up to stop, rounded to 12 significant digits.
// Throws std::invalid_argument unless 0 <= start <= stop <= 1 and step > 0.
std::vector<double> expand_grid(const CostGrid& grid);

struct SweepRow {
  double c = 0.0;
  double case1 = 0.0;            // cooperative optimum
  double case2_ne = 0.0;         // threshold equilibrium (sqrt c)
  double case2_opt = 0.0;        // best threshold pair (sqrt(c/2))
  double case3_max = 0.0;        // best equilibrium selection, full info
  double case3_min = 0.0;        // worst equilibrium selection, full info
  double regulated_case2 = 0.0;  // threshold equilibrium under the subsidy
  double regulated_case3 = 0.0;  // equilibrium under the side payment

  bool operator==(const SweepRow&) const = default;
};

// Closed-form row at cost c, rounded to 12 significant digits. Throws
// std::logic_error if a column invariant fails.
SweepRow sweep_row(Cost c);

// Throws std::logic_error describing the first violated invariant.
void check_row_invariants(const SweepRow& row);

std::vector<SweepRow> sweep(const CostGrid& grid);

double round_significant(double x);  // 12 significant digits
std::string format_number(double x);

std::string to_csv(std::span<const SweepRow> rows);
std::string to_json(std::span<const SweepRow> rows);

// Throws std::invalid_argument on a malformed document.
std::vector<SweepRow> parse_csv(std::string_view text);

}  // namespace twoserver

#endif  // TWOSERVER_SWEEP_H_
