#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lbt/core/indexed_heap.hpp"
#include "lbt/dynsp/sssp.hpp"
#include "lbt/planners/planner.hpp"
#include "lbt/planners/tree.hpp"

namespace lbt::planners {

/// Lower-bound-tree RRT. Keeps two roadmaps on the same vertices:
///  - the lower-bound graph, a superset of the edges RRG would keep, with
///    shortest paths maintained by a dynamic SSSP structure;
///  - the approximation tree, made only of certified collision-free edges.
/// After every iteration cost_apx(x) <= (1 + epsilon) * cost_lb(x) for every
/// vertex x, and cost_lb(x) <= cost_RRG(x) on the same sample sequence.
class LbtRrt : public Planner {
 public:
  LbtRrt(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {})
      : Planner(scenario, params, std::move(clock)), lower_(0), factor_(1.0 + params.epsilon) {
    lower_.add_vertex();
    approx_.add_root(0);
  }

  [[nodiscard]] std::string name() const override { return "lbt_rrt"; }

  [[nodiscard]] Cost best_cost() const override {
    const VertexId g = best_goal();
    return g == kNoVertex ? kInfiniteCost : approx_.cost(g);
  }

  [[nodiscard]] std::vector<VertexId> solution_vertices() const override {
    const VertexId g = best_goal();
    return g == kNoVertex ? std::vector<VertexId>{} : approx_.path_to(g);
  }

  [[nodiscard]] std::vector<Cost> vertex_costs() const override { return approx_.costs(); }

  [[nodiscard]] RoadmapView roadmap() const override {
    RoadmapView view{index().points(), approx_.costs(), approx_.parents(), {}};
    const auto& g = lower_.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const auto& a : g.out_arcs(v)) view.edges.push_back({v, a.vertex, a.weight});
    }
    return view;
  }

  [[nodiscard]] const dynsp::DynamicSssp& lower_bound() const noexcept { return lower_; }
  [[nodiscard]] const CostTree& approximation() const noexcept { return approx_; }
  [[nodiscard]] double approximation_factor() const noexcept { return factor_; }

  /// Inserts (x1, x2) into the lower-bound graph and restores the bounded
  /// approximation invariant by certifying shortest-path edges of violating
  /// vertices, cheapest first. Blocked edges leave the lower-bound graph.
  void consider_edge(VertexId x1, VertexId x2) {
    if (lower_.graph().has_edge(x1, x2)) return;
    const Cost w = distance(x1, x2);

    // Certify first when the insertion alone would break the invariant at x2;
    // a blocked edge then never enters the graph.
    const Cost via = lower_.cost(x1) + w;
    if (via < lower_.cost(x2) && approx_.cost(x2) > factor_ * via && !certify(x1, x2)) return;

    for (VertexId x : lower_.insert_edge(x1, x2, w)) {
      if (violated(x)) queue_.push_or_update(x, lower_.cost(x));
    }
    while (!queue_.empty()) {
      const VertexId x = queue_.top();
      if (!violated(x)) {
        queue_.pop();
        continue;
      }
      const VertexId p = lower_.parent(x);
      if (certify(p, x)) {
        approx_.set_parent(x, p, distance(p, x));
        queue_.pop();
      } else {
        for (VertexId y : lower_.delete_edge(p, x)) {
          if (queue_.contains(y)) queue_.update(y, lower_.cost(y));
        }
      }
    }
  }

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override {
    attach_vertex(nearest, v, weight);
    auto near = near_set(v);
    std::vector<std::pair<Cost, VertexId>> order;
    order.reserve(near.size());
    for (VertexId x : near) order.emplace_back(lower_.cost(x) + distance(x, v), x);
    std::sort(order.begin(), order.end());
    for (const auto& entry : order) consider_edge(entry.second, v);
    for (const auto& entry : order) consider_edge(v, entry.second);
  }

  /// Registers v and its certified edge to `nearest` in both roadmaps.
  void attach_vertex(VertexId nearest, VertexId v, Cost weight) {
    lower_.add_vertex();
    approx_.add_vertex(v, nearest, weight);
    lower_.insert_edge(nearest, v, weight);
    lower_.insert_edge(v, nearest, weight);
  }

  [[nodiscard]] std::uint64_t edge_count() const override { return lower_.graph().edge_count(); }
  [[nodiscard]] std::uint64_t delta_hat() const override { return lower_.max_affected(); }

 private:
  [[nodiscard]] bool violated(VertexId x) const { return approx_.cost(x) > factor_ * lower_.cost(x); }

  [[nodiscard]] VertexId best_goal() const {
    return best_goal_vertex(goal_vertices(), [this](VertexId g) { return approx_.cost(g); });
  }

  dynsp::DynamicSssp lower_;
  CostTree approx_;
  IndexedHeap<Cost> queue_;
  double factor_;
};

}  // namespace lbt::planners
