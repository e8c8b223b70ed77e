#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lbt/planners/planner.hpp"
#include "lbt/planners/tree.hpp"

namespace lbt::planners {

/// RRT* with the ordering optimization: neighbors are visited by the cost they
/// would give the new vertex, so the first collision-free one is its best
/// parent. The second pass offers the new vertex as parent to each neighbor.
///
/// With `defer_rewiring`, the planner behaves as RRT until the first solution
/// and as RRT* on the same tree afterwards (the RRT+RRT* baseline).
class RrtStar : public Planner {
 public:
  RrtStar(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {},
          bool defer_rewiring = false)
      : Planner(scenario, params, std::move(clock)), defer_rewiring_(defer_rewiring) {
    tree_.add_root(0);
  }

  [[nodiscard]] std::string name() const override { return defer_rewiring_ ? "rrt_rrt_star" : "rrt_star"; }

  [[nodiscard]] Cost best_cost() const override {
    const VertexId g = best_goal();
    return g == kNoVertex ? kInfiniteCost : tree_.cost(g);
  }

  [[nodiscard]] std::vector<VertexId> solution_vertices() const override {
    const VertexId g = best_goal();
    return g == kNoVertex ? std::vector<VertexId>{} : tree_.path_to(g);
  }

  [[nodiscard]] std::vector<Cost> vertex_costs() const override { return tree_.costs(); }

  [[nodiscard]] RoadmapView roadmap() const override {
    RoadmapView view{index().points(), tree_.costs(), tree_.parents(), {}};
    for (VertexId v = 1; v < tree_.size(); ++v) view.edges.push_back({tree_.parent(v), v, tree_.weight(v)});
    return view;
  }

  [[nodiscard]] const CostTree& tree() const noexcept { return tree_; }

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override {
    tree_.add_vertex(v, nearest, weight);
    if (defer_rewiring_ && best_cost() == kInfiniteCost) return;

    const auto near = near_set(v);
    std::vector<std::pair<Cost, VertexId>> order;
    order.reserve(near.size());
    for (VertexId x : near) order.emplace_back(tree_.cost(x) + distance(x, v), x);
    std::sort(order.begin(), order.end());

    for (const auto& [via, x] : order) {
      if (!(via < tree_.cost(v))) break;
      if (x == nearest) continue;
      if (certify(x, v)) {
        tree_.set_parent(v, x, distance(x, v));
        break;
      }
    }
    for (VertexId x : near) {
      const Cost w = distance(v, x);
      if (!(tree_.cost(v) + w < tree_.cost(x))) continue;
      if (certify(v, x)) tree_.set_parent(x, v, w);
    }
  }

  [[nodiscard]] std::uint64_t edge_count() const override { return tree_.size() - 1; }

 private:
  [[nodiscard]] VertexId best_goal() const {
    return best_goal_vertex(goal_vertices(), [this](VertexId g) { return tree_.cost(g); });
  }

  bool defer_rewiring_;
  CostTree tree_;
};

}  // namespace lbt::planners
