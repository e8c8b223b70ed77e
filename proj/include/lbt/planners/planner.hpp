#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/cspace/sampling.hpp"
#include "lbt/cspace/scenario.hpp"
#include "lbt/nn/neighbor_index.hpp"
#include "lbt/planners/common.hpp"

namespace lbt::planners {

struct RoadmapEdge {
  VertexId from;
  VertexId to;
  Cost weight;
};

/// Snapshot of a planner's roadmap for dumps and rendering. `parent`/`cost`
/// describe the tree the solution is read from; `edges` is the full edge set
/// (the lower-bound graph for the LBT planners).
struct RoadmapView {
  std::vector<cspace::Configuration> vertices;
  std::vector<Cost> cost;
  std::vector<VertexId> parent;
  std::vector<RoadmapEdge> edges;
};

/// Shared iteration skeleton of the RRT family: sample (goal-biased), nearest,
/// steer, one local-planner call for the nearest edge, then a
/// planner-specific connection step. Vertex 0 is the start.
class Planner {
 public:
  Planner(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {})
      : scenario_(&scenario),
        params_(params),
        clock_(clock ? std::move(clock) : steady_clock_from_now()),
        rng_(params.seed),
        index_(scenario.space),
        local_(scenario, params.resolution(scenario)) {
    params_.validate();
    index_.insert(scenario.start);
    if (cspace::in_goal(scenario, scenario.start)) goal_vertices_.push_back(0);
  }

  virtual ~Planner() = default;
  Planner(const Planner&) = delete;
  Planner& operator=(const Planner&) = delete;

  [[nodiscard]] virtual std::string name() const = 0;

  /// Cost of the current best solution, +inf if none.
  [[nodiscard]] virtual Cost best_cost() const = 0;

  /// Vertex ids of the current best solution, start first; empty if none.
  [[nodiscard]] virtual std::vector<VertexId> solution_vertices() const = 0;

  /// Cost-to-come of every vertex in the structure solutions are read from.
  [[nodiscard]] virtual std::vector<Cost> vertex_costs() const = 0;

  [[nodiscard]] virtual RoadmapView roadmap() const = 0;

  [[nodiscard]] std::optional<cspace::Path> solution() const {
    const auto ids = solution_vertices();
    if (ids.empty()) return std::nullopt;
    cspace::Path path;
    for (VertexId v : ids) path.push_back(index_.at(v));
    return path;
  }

  /// One iteration of the main loop.
  void step() {
    if (trace_.status == RunStatus::NotStarted) trace_.status = RunStatus::Running;
    ++iteration_;
    if (auto ext = extend()) add_extension(*ext);
    after_step();
  }

  /// Adds q as if an iteration had steered it out of `from`, bypassing
  /// sampling. Used to script exact roadmaps. The motion is checked (and
  /// counted) like any extension; a blocked one throws.
  VertexId insert_vertex(VertexId from, const cspace::Configuration& q) {
    if (trace_.status == RunStatus::NotStarted) trace_.status = RunStatus::Running;
    const auto& base = index_.at(from);
    const Cost w = cspace::distance(scenario_->space, base, q);
    if (w == 0.0) throw std::invalid_argument("scripted vertex coincides with its parent");
    if (!local_.check_motion(base, q)) throw std::invalid_argument("scripted motion is in collision");
    const VertexId v = add_extension({from, q, w});
    after_step();
    return v;
  }

  [[nodiscard]] bool should_stop() const {
    const auto& stop = params_.stop;
    if (stop.max_iterations && iteration_ >= *stop.max_iterations) return true;
    if (stop.first_solution && best_cost() < kInfiniteCost) return true;
    if (stop.time_budget_s && clock_() >= *stop.time_budget_s) return true;
    return false;
  }

  /// Iterates until the stop condition holds, then fixes the final status.
  void run() {
    if (trace_.status == RunStatus::NotStarted) {
      trace_.status = RunStatus::Running;
      after_step();
    }
    while (!should_stop()) step();
    finish();
  }

  void finish() {
    refresh_counters();
    trace_.status = best_cost() < kInfiniteCost ? RunStatus::Solved : RunStatus::NoSolution;
  }

  [[nodiscard]] const AnytimeTrace& trace() const noexcept { return trace_; }
  [[nodiscard]] std::uint64_t iteration() const noexcept { return iteration_; }
  [[nodiscard]] const nn::NeighborIndex& index() const noexcept { return index_; }
  [[nodiscard]] const LocalPlanner& local_planner() const noexcept { return local_; }
  [[nodiscard]] const std::vector<VertexId>& goal_vertices() const noexcept { return goal_vertices_; }
  [[nodiscard]] const cspace::Scenario& scenario() const noexcept { return *scenario_; }
  [[nodiscard]] const PlannerParams& params() const noexcept { return params_; }
  [[nodiscard]] double elapsed() const { return clock_(); }

 protected:
  struct Extension {
    VertexId nearest;
    cspace::Configuration config;
    Cost weight;
  };

  /// Connection step for a vertex that was just added via (nearest, v).
  virtual void on_new_vertex(VertexId nearest, VertexId v, Cost weight) = 0;
  [[nodiscard]] virtual std::uint64_t edge_count() const = 0;
  [[nodiscard]] virtual std::uint64_t delta_hat() const { return 0; }

  [[nodiscard]] Cost distance(VertexId a, VertexId b) const {
    return cspace::distance(scenario_->space, index_.at(a), index_.at(b));
  }

  bool certify(VertexId a, VertexId b) { return local_.check(a, b, index_.at(a), index_.at(b)); }

  /// k_RRG log|V| nearest neighbors of v, v excluded.
  [[nodiscard]] std::vector<VertexId> near_set(VertexId v) const {
    return index_.k_nearest(index_.at(v), nn::rrg_neighbor_count(index_.size()), v);
  }

  LocalPlanner& local() noexcept { return local_; }

 private:
  VertexId add_extension(const Extension& ext) {
    const VertexId v = index_.insert(ext.config);
    local_.mark_free(ext.nearest, v);
    if (cspace::in_goal(*scenario_, ext.config)) goal_vertices_.push_back(v);
    on_new_vertex(ext.nearest, v, ext.weight);
    return v;
  }

  std::optional<Extension> extend() {
    const auto& s = *scenario_;
    ++samples_;
    const bool toward_goal = rng_.uniform01() < params_.goal_bias;
    const cspace::Configuration target = toward_goal ? cspace::sample_goal(s, rng_, &local_.stats())
                                                     : cspace::sample_free(s, rng_, &local_.stats());
    const VertexId nearest = index_.nearest(target);
    const auto& from = index_.at(nearest);
    if (cspace::distance(s.space, from, target) == 0.0) return std::nullopt;
    cspace::Configuration x_new = cspace::steer(s.space, from, target, params_.eta);
    const Cost w = cspace::distance(s.space, from, x_new);
    if (w == 0.0) return std::nullopt;
    if (!local_.check_motion(from, x_new)) return std::nullopt;
    return Extension{nearest, x_new, w};
  }

  void after_step() {
    trace_.offer(clock_(), iteration_, best_cost());
    refresh_counters();
  }

  void refresh_counters() {
    auto& c = trace_.counters;
    c.samples = samples_;
    c.lp_calls = local_.stats().motion_checks;
    c.cc_calls = local_.stats().config_checks;
    c.delta_hat = delta_hat();
    c.vertices = index_.size();
    c.edges = edge_count();
  }

  const cspace::Scenario* scenario_;
  PlannerParams params_;
  Clock clock_;
  Rng rng_;
  nn::NeighborIndex index_;
  LocalPlanner local_;
  AnytimeTrace trace_;
  std::vector<VertexId> goal_vertices_;
  std::uint64_t iteration_ = 0;
  std::uint64_t samples_ = 0;
};

/// Best goal vertex under `cost`, ties by id; kNoVertex if none is reachable.
template <typename CostFn>
VertexId best_goal_vertex(const std::vector<VertexId>& goals, CostFn&& cost) {
  VertexId best = kNoVertex;
  Cost best_cost = kInfiniteCost;
  for (VertexId g : goals) {
    const Cost c = cost(g);
    if (c < best_cost || (c == best_cost && c < kInfiniteCost && g < best)) {
      best_cost = c;
      best = g;
    }
  }
  return best;
}

}  // namespace lbt::planners
