// Command-line front end: plan (one run), bench (a benchmark spec) and
// oracle (grid reference costs for a scenario file).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbt/bench/benchmark.hpp"
#include "lbt/bench/grid_oracle.hpp"
#include "lbt/bench/run.hpp"
#include "lbt/bench/svg.hpp"
#include "lbt/cspace/scenario_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lbt;

constexpr int kExitSolved = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSolution = 2;

struct PlanOptions {
  std::string scenario;
  std::string planner = "lbt_rrt";
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  double time_s = 0.0;
  std::string out;
  bool svg = false;
  bool check = false;
  bool roadmap = false;
  bool no_tree_reuse = false;
  double eta = 1.0;
  double goal_bias = 0.05;
  double delta = 0.0;
  std::size_t n0 = 100;
  double gamma = 0.0;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace(const fs::path& file, const bench::RunOutcome& outcome) {
  std::ofstream os(file);
  os << "elapsed_s,iteration,best_cost\n";
  for (const auto& e : outcome.trace.events) {
    os << num(e.elapsed_s) << ',' << e.iteration << ',' << num(e.best_cost) << '\n';
  }
  const auto& c = outcome.trace.counters;
  os << "# status " << planners::to_string(outcome.trace.status) << '\n'
     << "# counters samples=" << c.samples << " lp_calls=" << c.lp_calls << " cc_calls=" << c.cc_calls
     << " delta_hat=" << c.delta_hat << " vertices=" << c.vertices << " edges=" << c.edges << '\n';
  if (outcome.report) {
    const auto& r = *outcome.report;
    os << "# violations " << r.total() << '\n';
    if (r.equality_checked) os << "# epsilon_zero_max_gap " << num(r.max_equality_gap) << '\n';
    for (const auto& v : r.violations) {
      os << "# violation iteration=" << v.iteration << " kind=" << v.kind << " vertex="
         << (v.vertex == kNoVertex ? -1LL : static_cast<long long>(v.vertex)) << " detail=" << v.detail << '\n';
    }
  }
  if (!os) throw std::runtime_error("cannot write " + file.string());
}

void write_path(const fs::path& file, const std::optional<cspace::Path>& path) {
  std::ofstream os(file);
  if (path) {
    for (const auto& q : *path) {
      for (std::size_t i = 0; i < q.size(); ++i) os << (i ? " " : "") << num(q[i]);
      os << '\n';
    }
  }
  if (!os) throw std::runtime_error("cannot write " + file.string());
}

int run_plan(const PlanOptions& o) {
  const auto scenario = cspace::load_scenario(o.scenario);
  bench::RunRequest req;
  req.planner = o.planner;
  req.epsilon = o.epsilon;
  req.seed = o.seed;
  req.stop = o.time_s > 0.0 ? planners::StopCondition::seconds(o.time_s)
                            : planners::StopCondition::iterations(o.iterations ? o.iterations : 1000);
  req.eta = o.eta;
  req.goal_bias = o.goal_bias;
  req.delta = o.delta;
  req.n0 = o.n0;
  req.gamma = o.gamma;
  req.check = o.check;
  req.reuse_tree = !o.no_tree_reuse;
  const auto outcome = bench::run_planner(scenario, req);

  const fs::path out(o.out);
  fs::create_directories(out);
  write_trace(out / "trace.csv", outcome);
  write_path(out / "path.txt", outcome.path);
  if (o.svg) {
    std::ofstream(out / "roadmap.svg") << bench::emit_svg(outcome.roadmap, scenario, outcome.path);
  }
  if (o.roadmap) {
    std::ofstream dump(out / "roadmap.txt");
    bench::write_roadmap(dump, outcome.roadmap);
  }
  if (outcome.report && !outcome.report->empty()) {
    std::cerr << "check: " << outcome.report->total() << " violation(s), see trace.csv\n";
  }
  std::cout << o.planner << ": " << (outcome.path ? "solved" : "no solution");
  if (outcome.path) std::cout << ", cost " << num(outcome.trace.best_cost());
  std::cout << ", " << outcome.trace.counters.lp_calls << " local-planner calls\n";
  return outcome.path ? kExitSolved : kExitNoSolution;
}

int run_bench(const std::string& spec_file, std::size_t workers, const std::string& out_override) {
  auto spec = bench::load_spec(spec_file);
  if (workers > 0) spec.workers = workers;
  if (!out_override.empty()) spec.out_dir = out_override;
  const auto scenario = cspace::load_scenario(spec.scenario_path.string());
  const auto rows = bench::run_benchmark(scenario, spec);
  bench::write_outputs(spec, rows);
  std::cout << rows.size() << " runs written to " << spec.out_dir.string() << '\n';
  return kExitSolved;
}

int run_oracle(const std::string& file, std::size_t cells, bool write) {
  std::ifstream in(file);
  if (!in) throw cspace::ScenarioFormatError("cannot open scenario file '" + file + "'");
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in);
  const auto scenario = cspace::parse_scenario(nlohmann::json::parse(doc.dump()));
  const auto best = bench::grid_oracle(scenario, cells);
  std::cout << "best_known " << num(best.cost) << " (grid " << num(best.grid_cost) << ")\n";

  std::vector<cspace::Polygon> plugs;
  if (auto it = doc.find("oracle_plugs"); it != doc.end()) {
    for (const auto& poly : *it) {
      cspace::Polygon p;
      for (const auto& v : poly) p.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      plugs.push_back(p);
    }
  }
  std::optional<double> wide;
  if (!plugs.empty()) {
    wide = bench::grid_oracle(scenario, cells, plugs).cost;
    std::cout << "wide_route_cost " << num(*wide) << '\n';
  }
  if (write) {
    doc["best_known"] = best.cost;
    if (wide) doc["wide_route_cost"] = *wide;
    doc["best_known_provenance"] = "octile grid Dijkstra, " + std::to_string(cells) + "x" + std::to_string(cells) +
                                   " cells, string-pulled; wide route with oracle_plugs closed";
    std::ofstream(file) << doc.dump(2) << '\n';
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based motion planning with lower-bound trees"};
  app.require_subcommand(1);

  PlanOptions plan;
  auto* cmd_plan = app.add_subcommand("plan", "run one planner on a scenario");
  cmd_plan->add_option("--scenario", plan.scenario, "scenario JSON file")->required();
  cmd_plan->add_option("--planner", plan.planner, "planner name")
      ->check(CLI::IsMember(std::vector<std::string>(bench::kPlannerNames.begin(), bench::kPlannerNames.end())));
  cmd_plan->add_option("--epsilon", plan.epsilon, "approximation slack (LBT planners)")->check(CLI::NonNegativeNumber);
  cmd_plan->add_option("--seed", plan.seed, "random seed");
  auto* iters = cmd_plan->add_option("--iterations", plan.iterations, "iteration budget (doublings for batch planners)");
  auto* secs = cmd_plan->add_option("--time", plan.time_s, "wall-clock budget in seconds")->check(CLI::PositiveNumber);
  iters->excludes(secs);
  cmd_plan->add_option("--out", plan.out, "output directory")->required();
  cmd_plan->add_flag("--svg", plan.svg, "write roadmap.svg");
  cmd_plan->add_flag("--check", plan.check, "shadow-check invariants and append the report to trace.csv");
  cmd_plan->add_flag("--roadmap", plan.roadmap, "write the roadmap dump roadmap.txt");
  cmd_plan->add_flag("--no-tree-reuse", plan.no_tree_reuse, "rrt_rrt_star: start RRT* from a fresh tree");
  cmd_plan->add_option("--eta", plan.eta, "steer step")->check(CLI::PositiveNumber);
  cmd_plan->add_option("--goal-bias", plan.goal_bias, "goal sampling probability")->check(CLI::Range(0.0, 0.999999));
  cmd_plan->add_option("--delta", plan.delta, "motion-check resolution (0 = 1% of the diagonal)");
  cmd_plan->add_option("--n0", plan.n0, "first batch size (batch planners)")->check(CLI::PositiveNumber);
  cmd_plan->add_option("--gamma", plan.gamma, "connection radius scale (0 = default)");

  std::string spec_file, bench_out;
  std::size_t workers = 0;
  auto* cmd_bench = app.add_subcommand("bench", "run a benchmark spec");
  cmd_bench->add_option("spec", spec_file, "benchmark spec JSON")->required();
  cmd_bench->add_option("--workers", workers, "worker threads (overrides the spec)");
  cmd_bench->add_option("--out", bench_out, "output directory (overrides the spec)");

  std::string oracle_file;
  std::size_t cells = 800;
  bool oracle_write = false;
  auto* cmd_oracle = app.add_subcommand("oracle", "grid reference costs for a planar scenario");
  cmd_oracle->add_option("--scenario", oracle_file, "scenario JSON file")->required();
  cmd_oracle->add_option("--cells", cells, "grid cells per side")->check(CLI::Range(2, 100000));
  cmd_oracle->add_flag("--write", oracle_write, "store the costs in the scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_plan) return run_plan(plan);
    if (*cmd_bench) return run_bench(spec_file, workers, bench_out);
    if (*cmd_oracle) return run_oracle(oracle_file, cells, oracle_write);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
