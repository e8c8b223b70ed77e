#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/planners/common.hpp"

namespace lbt::bench {

inline constexpr const char* kResultsHeader =
    "scenario,planner,epsilon,budget_s,seed,success,cost_raw,cost_shortcut,cost_norm,samples,lp_calls,cc_calls,"
    "delta_hat,vertices,edges";

inline constexpr const char* kSummaryHeader =
    "scenario,planner,epsilon,budget_s,runs,successes,success_rate,median_cost_norm,mean_cost_norm";

/// One benchmark run. `epsilon` is NaN for planners that ignore it and is
/// written as n/a. Under iteration budgets `budget` holds the iteration (or
/// doubling) count.
struct ResultRow {
  std::string scenario;
  std::string planner;
  double epsilon = std::nan("");
  double budget = 0.0;
  std::uint64_t seed = 0;
  bool success = false;
  double cost_raw = kInfiniteCost;
  double cost_shortcut = kInfiniteCost;
  double cost_norm = kInfiniteCost;
  planners::Counters counters;
};

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "n/a";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline double parse_number(const std::string& text) {
  if (text == "n/a") return std::nan("");
  std::size_t used = 0;
  const double x = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return x;
}

inline std::string format_row(const ResultRow& r) {
  std::ostringstream os;
  const auto& c = r.counters;
  os << r.scenario << ',' << r.planner << ',' << format_number(r.epsilon) << ',' << format_number(r.budget) << ','
     << r.seed << ',' << (r.success ? 1 : 0) << ',' << format_number(r.cost_raw) << ','
     << format_number(r.cost_shortcut) << ',' << format_number(r.cost_norm) << ',' << c.samples << ','
     << c.lp_calls << ',' << c.cc_calls << ',' << c.delta_hat << ',' << c.vertices << ',' << c.edges;
  return os.str();
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline ResultRow parse_row(const std::string& line) {
  const auto f = split_csv_line(line);
  if (f.size() != 15) throw std::invalid_argument("results row needs 15 fields, got " + std::to_string(f.size()));
  ResultRow r;
  r.scenario = f[0];
  r.planner = f[1];
  r.epsilon = parse_number(f[2]);
  r.budget = parse_number(f[3]);
  r.seed = std::stoull(f[4]);
  if (f[5] != "0" && f[5] != "1") throw std::invalid_argument("success must be 0 or 1");
  r.success = f[5] == "1";
  r.cost_raw = parse_number(f[6]);
  r.cost_shortcut = parse_number(f[7]);
  r.cost_norm = parse_number(f[8]);
  auto& c = r.counters;
  c.samples = std::stoull(f[9]);
  c.lp_calls = std::stoull(f[10]);
  c.cc_calls = std::stoull(f[11]);
  c.delta_hat = std::stoull(f[12]);
  c.vertices = std::stoull(f[13]);
  c.edges = std::stoull(f[14]);
  return r;
}

}  // namespace lbt::bench
