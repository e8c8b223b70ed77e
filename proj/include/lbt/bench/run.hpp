#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lbt/fmt/fmt.hpp"
#include "lbt/planners/lazy_lbt_rrt.hpp"
#include "lbt/planners/lbt_rrt.hpp"
#include "lbt/planners/rrg.hpp"
#include "lbt/planners/rrt.hpp"
#include "lbt/planners/rrt_star.hpp"
#include "lbt/planners/shadow_check.hpp"

namespace lbt::bench {

using planners::AnytimeTrace;
using planners::Clock;
using planners::RoadmapView;
using planners::StopCondition;
using planners::ViolationReport;

inline constexpr std::array<std::string_view, 9> kPlannerNames = {
    "rrt", "rrg", "rrt_star", "rrt_rrt_star", "lbt_rrt", "lazy_lbt_rrt", "fmt", "afmt", "lbt_afmt"};

inline bool is_planner_name(std::string_view name) {
  return std::find(kPlannerNames.begin(), kPlannerNames.end(), name) != kPlannerNames.end();
}

inline bool is_batch_planner(std::string_view name) { return name == "fmt" || name == "afmt" || name == "lbt_afmt"; }

/// Planners whose behavior depends on epsilon.
inline bool uses_epsilon(std::string_view name) {
  return name == "lbt_rrt" || name == "lazy_lbt_rrt" || name == "lbt_afmt";
}

/// Everything needed to run one planner once.
struct RunRequest {
  std::string planner = "rrt";
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  StopCondition stop = StopCondition::iterations(1000);  // batch planners: doublings
  double eta = 1.0;
  double goal_bias = 0.05;
  double delta = 0.0;
  std::size_t n0 = 100;     // batch planners: first batch size
  double gamma = 0.0;       // batch planners: 0 selects the default
  bool check = false;       // shadow / audit mode
  bool reuse_tree = true;   // rrt_rrt_star: keep the RRT tree for the RRT* phase

  [[nodiscard]] planners::PlannerParams tree_params() const {
    planners::PlannerParams p;
    p.eta = eta;
    p.goal_bias = goal_bias;
    p.epsilon = epsilon;
    p.stop = stop;
    p.seed = seed;
    p.delta = delta;
    return p;
  }

  [[nodiscard]] fmt::BatchParams batch_params() const {
    fmt::BatchParams p;
    p.n0 = n0;
    p.gamma = gamma;
    p.epsilon = epsilon;
    p.stop = stop;
    p.seed = seed;
    p.delta = delta;
    return p;
  }
};

struct RunOutcome {
  AnytimeTrace trace;
  std::optional<cspace::Path> path;
  RoadmapView roadmap;
  std::optional<ViolationReport> report;  // present iff the request asked for a check

  [[nodiscard]] bool solved() const { return path.has_value(); }
};

/// Builds a planner of the RRT family; nullptr for batch planner names.
inline std::unique_ptr<planners::Planner> make_tree_planner(std::string_view name, const cspace::Scenario& scenario,
                                                            const planners::PlannerParams& params, Clock clock = {}) {
  using namespace planners;
  if (name == "rrt") return std::make_unique<Rrt>(scenario, params, std::move(clock));
  if (name == "rrg") return std::make_unique<Rrg>(scenario, params, std::move(clock));
  if (name == "rrt_star") return std::make_unique<RrtStar>(scenario, params, std::move(clock));
  if (name == "rrt_rrt_star") return std::make_unique<RrtStar>(scenario, params, std::move(clock), true);
  if (name == "lbt_rrt") return std::make_unique<LbtRrt>(scenario, params, std::move(clock));
  if (name == "lazy_lbt_rrt") return std::make_unique<LazyLbtRrt>(scenario, params, std::move(clock));
  return nullptr;
}

/// Appends a violation for every path segment the local planner rejects and
/// for a path that does not end in the goal region.
inline void audit_path(const cspace::Scenario& scenario, const cspace::Path& path, double resolution,
                       ViolationReport& report) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!cspace::collision_free_motion(scenario, path[i - 1], path[i], resolution)) {
      report.add(0, "infeasible_path", static_cast<VertexId>(i), "segment rejected by the local planner");
    }
  }
  if (path.empty() || !cspace::in_goal(scenario, path.back())) {
    report.add(0, "path_misses_goal", kNoVertex, "last waypoint outside the goal region");
  }
}

namespace detail {

inline RunOutcome from_planner(const planners::Planner& p) {
  RunOutcome out;
  out.trace = p.trace();
  out.path = p.solution();
  out.roadmap = p.roadmap();
  return out;
}

// RRT until the first solution, then a fresh RRT* on what is left of the
// budget. The fresh tree draws from a different stream than the RRT phase.
inline RunOutcome rrt_then_fresh_rrt_star(const cspace::Scenario& scenario, const RunRequest& req, Clock clock) {
  auto params = req.tree_params();
  params.stop.first_solution = true;
  planners::Rrt first(scenario, params, clock);
  first.run();
  RunOutcome out = from_planner(first);
  const auto& stop = req.stop;
  const bool iterations_left = !stop.max_iterations || first.iteration() < *stop.max_iterations;
  const bool time_left = !stop.time_budget_s || clock() < *stop.time_budget_s;
  if (!first.solution() || !iterations_left || !time_left) return out;

  auto rest = req.tree_params();
  rest.seed = req.seed ^ 0x9e3779b97f4a7c15ULL;
  if (stop.max_iterations) rest.stop.max_iterations = *stop.max_iterations - first.iteration();
  const double offset = clock();
  const std::uint64_t iteration_offset = first.iteration();
  planners::RrtStar second(scenario, rest, [clock, offset] { return clock() - offset; });
  second.run();

  for (const auto& e : second.trace().events) {
    out.trace.offer(e.elapsed_s + offset, e.iteration + iteration_offset, e.best_cost);
  }
  if (second.best_cost() < first.best_cost()) {
    out.path = second.solution();
    out.roadmap = second.roadmap();
  }
  auto& c = out.trace.counters;
  const auto& d = second.trace().counters;
  c.samples += d.samples;
  c.lp_calls += d.lp_calls;
  c.cc_calls += d.cc_calls;
  c.delta_hat = std::max(c.delta_hat, d.delta_hat);
  c.vertices = d.vertices;
  c.edges = d.edges;
  return out;
}

}  // namespace detail

/// Runs one planner according to `req`. Throws std::invalid_argument for an
/// unknown planner name.
inline RunOutcome run_planner(const cspace::Scenario& scenario, const RunRequest& req, Clock clock = {}) {
  if (!is_planner_name(req.planner)) throw std::invalid_argument("unknown planner '" + req.planner + "'");
  if (!clock) clock = planners::steady_clock_from_now();
  const double resolution = req.delta > 0.0 ? req.delta : 0.01 * scenario.space.diagonal();

  RunOutcome out;
  if (is_batch_planner(req.planner)) {
    const auto variant = req.planner == "fmt"    ? fmt::BatchVariant::Fmt
                         : req.planner == "afmt" ? fmt::BatchVariant::AnytimeFmt
                                                 : fmt::BatchVariant::LbtAnytimeFmt;
    auto run = fmt::run_batch(scenario, variant, req.batch_params(), clock);
    out.trace = std::move(run.trace);
    out.path = std::move(run.best_path);
    out.roadmap.vertices = run.samples;
    out.roadmap.cost = run.last.tree_cost;
    out.roadmap.parent = run.last.parent;
    out.roadmap.cost.resize(run.samples.size(), kInfiniteCost);
    out.roadmap.parent.resize(run.samples.size(), kNoVertex);
    for (VertexId v = 0; v < out.roadmap.parent.size(); ++v) {
      const VertexId p = out.roadmap.parent[v];
      if (p != kNoVertex) {
        out.roadmap.edges.push_back({p, v, cspace::distance(scenario.space, run.samples[p], run.samples[v])});
      }
    }
    if (req.check) out.report = std::move(run.audit);
  } else if (req.planner == "rrt_rrt_star" && !req.reuse_tree) {
    out = detail::rrt_then_fresh_rrt_star(scenario, req, clock);
    if (req.check) out.report = ViolationReport{};
  } else {
    auto planner = make_tree_planner(req.planner, scenario, req.tree_params(), clock);
    if (req.check) {
      planners::ShadowRun shadow(std::move(planner), scenario, req.tree_params());
      shadow.run();
      out = detail::from_planner(shadow.subject());
      out.report = shadow.report();
    } else {
      planner->run();
      out = detail::from_planner(*planner);
    }
  }
  if (out.report && out.path) audit_path(scenario, *out.path, resolution, *out.report);
  return out;
}

/// Debug dump: `v id coords... cost parent` per vertex (parent -1 for none),
/// then `e u v w` per edge.
inline void write_roadmap(std::ostream& os, const RoadmapView& view) {
  char buf[64];
  for (VertexId v = 0; v < view.vertices.size(); ++v) {
    os << "v " << v;
    for (double x : view.vertices[v]) {
      std::snprintf(buf, sizeof buf, " %.17g", x);
      os << buf;
    }
    const Cost c = v < view.cost.size() ? view.cost[v] : kInfiniteCost;
    const VertexId p = v < view.parent.size() ? view.parent[v] : kNoVertex;
    std::snprintf(buf, sizeof buf, " %.17g", c);
    os << buf << ' ' << (p == kNoVertex ? -1LL : static_cast<long long>(p)) << '\n';
  }
  for (const auto& e : view.edges) {
    std::snprintf(buf, sizeof buf, " %.17g", e.weight);
    os << "e " << e.from << ' ' << e.to << buf << '\n';
  }
}

}  // namespace lbt::bench
