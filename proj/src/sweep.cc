#include "twoserver/sweep.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "twoserver/bayesian.h"
#include "twoserver/cooperative.h"
#include "twoserver/full_info.h"

namespace twoserver {
namespace {

constexpr double kSlack = 1e-12;

double parse_double(std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("not a number: '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    out.push_back(line.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

}  // namespace

std::vector<double> expand_grid(const CostGrid& grid) {
  if (!(grid.step > 0.0)) throw std::invalid_argument("c-step must be > 0");
  if (!(grid.start >= 0.0 && grid.start <= grid.stop && grid.stop <= 1.0)) {
    throw std::invalid_argument("c grid needs 0 <= start <= stop <= 1");
  }
  const auto count = static_cast<long>(
      std::floor((grid.stop - grid.start) / grid.step + 1e-9));
  std::vector<double> values;
  values.reserve(count + 1);
  for (long k = 0; k <= count; ++k) {
    const double c = round_significant(grid.start + k * grid.step);
    values.push_back(std::min(c, 1.0));
  }
  return values;
}

double round_significant(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x,
                                    std::chars_format::general, 12);
  return parse_double(std::string_view(buffer, result.ptr - buffer));
}

std::string format_number(double x) {
  const double rounded = round_significant(x);
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), rounded);
  return std::string(buffer, result.ptr);
}

SweepRow sweep_row(Cost c) {
  SweepRow row;
  row.c = round_significant(c.value());
  row.case1 = round_significant(welfare_case1(c));
  row.case2_ne =
      round_significant(welfare_thresholds(nash_threshold(c, false), c).total);
  row.case2_opt =
      round_significant(welfare_thresholds(optimal_thresholds(c), c).total);
  row.case3_max = round_significant(welfare_case3_max(c));
  row.case3_min = round_significant(welfare_case3_min(c));
  row.regulated_case2 =
      round_significant(welfare_thresholds(nash_threshold(c, true), c).total);
  // The side payment turns the cooperative optimum into the equilibrium.
  row.regulated_case3 = round_significant(welfare_case1(c));
  check_row_invariants(row);
  return row;
}

void check_row_invariants(const SweepRow& row) {
  const double columns[] = {row.case1,     row.case2_ne,  row.case2_opt,
                            row.case3_max, row.case3_min, row.regulated_case2,
                            row.regulated_case3};
  for (const double v : columns) {
    if (v < -kSlack || v > 4.0 / 3.0 + kSlack) {
      throw std::logic_error("welfare " + format_number(v) + " at c=" +
                             format_number(row.c) + " outside [0, 4/3]");
    }
  }
  if (row.case1 < row.case3_max - kSlack ||
      row.case3_max < row.case3_min - kSlack) {
    throw std::logic_error("case1 >= case3_max >= case3_min violated at c=" +
                           format_number(row.c));
  }
  if (row.case2_opt < row.case2_ne - kSlack) {
    throw std::logic_error("case2_opt >= case2_ne violated at c=" +
                           format_number(row.c));
  }
  if (row.regulated_case3 != row.case1) {
    throw std::logic_error("reg_case3 != case1 at c=" + format_number(row.c));
  }
}

std::vector<SweepRow> sweep(const CostGrid& grid) {
  std::vector<SweepRow> rows;
  for (const double c : expand_grid(grid)) rows.push_back(sweep_row(Cost(c)));
  return rows;
}

std::string to_csv(std::span<const SweepRow> rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    const double fields[] = {r.c,         r.case1,     r.case2_ne,
                             r.case2_opt, r.case3_max, r.case3_min,
                             r.regulated_case2, r.regulated_case3};
    for (std::size_t k = 0; k < std::size(fields); ++k) {
      if (k > 0) out += ',';
      out += format_number(fields[k]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(std::span<const SweepRow> rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    doc.push_back({{"c", r.c},
                   {"case1", r.case1},
                   {"case2_ne", r.case2_ne},
                   {"case2_opt", r.case2_opt},
                   {"case3_max", r.case3_max},
                   {"case3_min", r.case3_min},
                   {"reg_case2", r.regulated_case2},
                   {"reg_case3", r.regulated_case3}});
  }
  return doc.dump(2) + "\n";
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kSweepCsvHeader) {
    throw std::invalid_argument("missing or unexpected CSV header");
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string_view> fields = split(lines[i], ',');
    if (fields.size() != 8) {
      throw std::invalid_argument("CSV line " + std::to_string(i + 1) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields, expected 8");
    }
    rows.push_back({parse_double(fields[0]), parse_double(fields[1]),
                    parse_double(fields[2]), parse_double(fields[3]),
                    parse_double(fields[4]), parse_double(fields[5]),
                    parse_double(fields[6]), parse_double(fields[7])});
  }
  return rows;
}

}  // namespace twoserver
