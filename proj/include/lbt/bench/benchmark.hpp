#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "lbt/bench/csv.hpp"
#include "lbt/bench/run.hpp"
#include "lbt/cspace/scenario_io.hpp"
#include "lbt/postprocess/shortcut.hpp"

namespace lbt::bench {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BudgetKind { Iterations, Seconds };

struct PlannerEntry {
  std::string name;
  std::vector<double> epsilons;  // a single NaN for planners that ignore it
};

/// Parsed benchmark description. Paths are resolved against the spec file.
struct BenchmarkSpec {
  std::filesystem::path scenario_path;
  std::vector<PlannerEntry> planners;
  std::vector<double> budgets;
  BudgetKind budget_kind = BudgetKind::Iterations;
  std::size_t runs = 1;
  std::uint64_t base_seed = 0;
  std::size_t shortcut_iterations = 100;
  std::filesystem::path out_dir = "bench_out";
  std::size_t workers = 1;
  double eta = 1.0;
  double goal_bias = 0.05;
  std::size_t n0 = 100;
  double gamma = 0.0;

  void validate() const {
    if (runs < 1) throw SpecError("runs must be at least 1");
    if (budgets.empty()) throw SpecError("budgets must not be empty");
    for (std::size_t i = 0; i < budgets.size(); ++i) {
      if (!(budgets[i] > 0.0)) throw SpecError("budgets must be positive");
      if (i > 0 && !(budgets[i] > budgets[i - 1])) throw SpecError("budgets must be strictly increasing");
      if (budget_kind == BudgetKind::Iterations && budgets[i] != std::floor(budgets[i])) {
        throw SpecError("iteration budgets must be whole numbers");
      }
    }
    if (planners.empty()) throw SpecError("planners must not be empty");
    for (const auto& p : planners) {
      if (!is_planner_name(p.name)) throw SpecError("unknown planner '" + p.name + "'");
      if (p.epsilons.empty()) throw SpecError("planner '" + p.name + "' has an empty epsilon list");
      for (double e : p.epsilons) {
        if (!std::isnan(e) && !(e >= 0.0)) throw SpecError("epsilon must be nonnegative");
      }
    }
    if (workers < 1) throw SpecError("workers must be at least 1");
  }
};

namespace detail {

inline const nlohmann::json& spec_field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SpecError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T spec_value(const nlohmann::json& v, const std::string& field) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SpecError("field '" + field + "' has the wrong type");
  }
}

}  // namespace detail

/// Reads a spec document. Required: scenario, planners, budgets. Each planner
/// is a name or {"name": ..., "epsilons": [...]}.
inline BenchmarkSpec parse_spec(const nlohmann::json& doc, const std::filesystem::path& base_dir = {}) {
  using detail::spec_field;
  using detail::spec_value;
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  BenchmarkSpec spec;
  spec.scenario_path = spec_value<std::string>(spec_field(doc, "scenario"), "scenario");
  if (spec.scenario_path.is_relative()) spec.scenario_path = base_dir / spec.scenario_path;

  const auto& planners = spec_field(doc, "planners");
  if (!planners.is_array()) throw SpecError("field 'planners' must be an array");
  for (std::size_t i = 0; i < planners.size(); ++i) {
    const auto& p = planners[i];
    const std::string where = "planners[" + std::to_string(i) + "]";
    PlannerEntry entry;
    if (p.is_string()) {
      entry.name = p.get<std::string>();
    } else if (p.is_object()) {
      entry.name = spec_value<std::string>(spec_field(p, "name"), where + ".name");
      if (auto e = p.find("epsilons"); e != p.end()) {
        entry.epsilons = spec_value<std::vector<double>>(*e, where + ".epsilons");
      }
    } else {
      throw SpecError("field '" + where + "' must be a name or an object");
    }
    if (!uses_epsilon(entry.name)) {
      entry.epsilons = {std::nan("")};
    } else if (entry.epsilons.empty()) {
      entry.epsilons = {0.0};
    }
    spec.planners.push_back(std::move(entry));
  }

  spec.budgets = spec_value<std::vector<double>>(spec_field(doc, "budgets"), "budgets");
  if (auto k = doc.find("budget_kind"); k != doc.end()) {
    const auto kind = spec_value<std::string>(*k, "budget_kind");
    if (kind == "iterations") {
      spec.budget_kind = BudgetKind::Iterations;
    } else if (kind == "seconds") {
      spec.budget_kind = BudgetKind::Seconds;
    } else {
      throw SpecError("field 'budget_kind' must be \"iterations\" or \"seconds\"");
    }
  }
  auto optional_field = [&](const char* key, auto& target) {
    if (auto it = doc.find(key); it != doc.end()) {
      target = spec_value<std::decay_t<decltype(target)>>(*it, key);
    }
  };
  optional_field("runs", spec.runs);
  optional_field("base_seed", spec.base_seed);
  optional_field("shortcut_iterations", spec.shortcut_iterations);
  optional_field("workers", spec.workers);
  optional_field("eta", spec.eta);
  optional_field("goal_bias", spec.goal_bias);
  optional_field("n0", spec.n0);
  optional_field("gamma", spec.gamma);
  if (auto it = doc.find("out_dir"); it != doc.end()) {
    spec.out_dir = spec_value<std::string>(*it, "out_dir");
    if (spec.out_dir.is_relative()) spec.out_dir = base_dir / spec.out_dir;
  }
  spec.validate();
  return spec;
}

inline BenchmarkSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path.string() + ": malformed JSON: " + e.what());
  }
  return parse_spec(doc, path.parent_path());
}

/// A (planner, epsilon, budget) cell.
struct Cell {
  std::string planner;
  double epsilon;
  double budget;
};

/// Runs one seeded cell and post-processes the result into a row.
inline ResultRow run_cell(const cspace::Scenario& scenario, const BenchmarkSpec& spec, const Cell& cell,
                          std::uint64_t seed) {
  RunRequest req;
  req.planner = cell.planner;
  req.epsilon = std::isnan(cell.epsilon) ? 0.0 : cell.epsilon;
  req.seed = seed;
  req.stop = spec.budget_kind == BudgetKind::Iterations
                 ? StopCondition::iterations(static_cast<std::uint64_t>(cell.budget))
                 : StopCondition::seconds(cell.budget);
  req.eta = spec.eta;
  req.goal_bias = spec.goal_bias;
  req.n0 = spec.n0;
  req.gamma = spec.gamma;
  const auto outcome = run_planner(scenario, req);

  ResultRow row;
  row.scenario = scenario.name;
  row.planner = cell.planner;
  row.epsilon = cell.epsilon;
  row.budget = cell.budget;
  row.seed = seed;
  row.counters = outcome.trace.counters;
  if (outcome.path) {
    row.success = true;
    row.cost_raw = postprocess::path_cost(scenario.space, *outcome.path);
    Rng rng(seed ^ 0x5bd1e995ULL);
    const double resolution = 0.01 * scenario.space.diagonal();
    const auto smooth = postprocess::shortcut(scenario, *outcome.path, spec.shortcut_iterations, rng, resolution);
    row.cost_shortcut = postprocess::path_cost(scenario.space, smooth);
    if (scenario.reference.best_known) row.cost_norm = row.cost_shortcut / *scenario.reference.best_known;
  }
  return row;
}

inline bool row_before(const ResultRow& a, const ResultRow& b) {
  // NaN epsilons (n/a) sort first within a planner.
  const auto eps = [](double e) { return std::isnan(e) ? -1.0 : e; };
  return std::make_tuple(a.planner, eps(a.epsilon), a.budget, a.seed) <
         std::make_tuple(b.planner, eps(b.epsilon), b.budget, b.seed);
}

/// Executes every (planner, epsilon, budget, seed) run on a worker pool and
/// returns the rows sorted by planner, epsilon, budget and seed.
inline std::vector<ResultRow> run_benchmark(const cspace::Scenario& scenario, const BenchmarkSpec& spec) {
  std::vector<Cell> cells;
  for (const auto& p : spec.planners) {
    for (double e : p.epsilons) {
      for (double b : spec.budgets) cells.push_back({p.name, e, b});
    }
  }
  const std::size_t total = cells.size() * spec.runs;
  std::vector<ResultRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      try {
        rows[t] = run_cell(scenario, spec, cells[t / spec.runs], spec.base_seed + t % spec.runs);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::min(spec.workers, std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::sort(rows.begin(), rows.end(), row_before);
  return rows;
}

struct SummaryRow {
  std::string scenario;
  std::string planner;
  double epsilon;
  double budget;
  std::size_t runs = 0;
  std::size_t successes = 0;
  double median_cost_norm = std::nan("");
  double mean_cost_norm = std::nan("");

  [[nodiscard]] double success_rate() const { return runs ? static_cast<double>(successes) / runs : 0.0; }
};

inline double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Per-cell success rate and normalized shortcut cost over successful runs.
/// Expects rows sorted by row_before.
inline std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::vector<double> costs;
  auto flush = [&] {
    if (out.empty()) return;
    auto& s = out.back();
    s.median_cost_norm = median(costs);
    if (!costs.empty()) {
      double sum = 0.0;
      for (double c : costs) sum += c;
      s.mean_cost_norm = sum / static_cast<double>(costs.size());
    }
    costs.clear();
  };
  for (const auto& r : rows) {
    const bool same = !out.empty() && out.back().planner == r.planner && out.back().budget == r.budget &&
                      (out.back().epsilon == r.epsilon || (std::isnan(out.back().epsilon) && std::isnan(r.epsilon)));
    if (!same) {
      flush();
      out.push_back({r.scenario, r.planner, r.epsilon, r.budget});
    }
    auto& s = out.back();
    ++s.runs;
    if (r.success) {
      ++s.successes;
      if (std::isfinite(r.cost_norm)) costs.push_back(r.cost_norm);
    }
  }
  flush();
  return out;
}

inline std::string format_summary_row(const SummaryRow& s) {
  std::ostringstream os;
  os << s.scenario << ',' << s.planner << ',' << format_number(s.epsilon) << ',' << format_number(s.budget) << ','
     << s.runs << ',' << s.successes << ',' << format_number(s.success_rate()) << ','
     << format_number(s.median_cost_norm) << ',' << format_number(s.mean_cost_norm);
  return os.str();
}

/// Writes results.csv and summary.csv into spec.out_dir.
inline void write_outputs(const BenchmarkSpec& spec, const std::vector<ResultRow>& rows) {
  std::filesystem::create_directories(spec.out_dir);
  std::ofstream results(spec.out_dir / "results.csv");
  results << kResultsHeader << '\n';
  for (const auto& r : rows) results << format_row(r) << '\n';
  std::ofstream summary(spec.out_dir / "summary.csv");
  summary << kSummaryHeader << '\n';
  for (const auto& s : summarize(rows)) summary << format_summary_row(s) << '\n';
  if (!results || !summary) throw std::runtime_error("failed writing benchmark outputs to " + spec.out_dir.string());
}

}  // namespace lbt::bench
