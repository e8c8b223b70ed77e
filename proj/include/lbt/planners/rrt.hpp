#pragma once

#include <string>
#include <vector>

#include "lbt/planners/planner.hpp"
#include "lbt/planners/tree.hpp"

namespace lbt::planners {

/// RRT: the nearest edge is the only connection.
class Rrt : public Planner {
 public:
  Rrt(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {})
      : Planner(scenario, params, std::move(clock)) {
    tree_.add_root(0);
  }

  [[nodiscard]] std::string name() const override { return "rrt"; }

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
  }

  [[nodiscard]] std::uint64_t edge_count() const override { return tree_.size() - 1; }

 private:
  [[nodiscard]] VertexId best_goal() const {
    return best_goal_vertex(goal_vertices(), [this](VertexId g) { return tree_.cost(g); });
  }

  CostTree tree_;
};

}  // namespace lbt::planners
