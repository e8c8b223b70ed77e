#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lbt/dynsp/lpa_star.hpp"
#include "lbt/planners/planner.hpp"

namespace lbt::planners {

/// Lazy, goal-biased variant of LbtRrt. The bounded-approximation invariant is
/// only kept for the goal: edges enter the lower-bound graph unchecked, and
/// the local planner is called only on edges of the current shortest
/// lower-bound path to the goal, walking back from the goal.
///
/// Both roadmaps are searched with LPA*. The approximation roadmap is the
/// graph of certified edges. Until a lower-bound path to the goal exists, the
/// only local-planner calls are the ones RRT itself makes.
class LazyLbtRrt : public Planner {
 public:
  LazyLbtRrt(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {})
      : Planner(scenario, params, std::move(clock)), lower_(0), approx_(0), factor_(1.0 + params.epsilon) {
    add_search_vertex(0);
    refresh();
  }

  [[nodiscard]] std::string name() const override { return "lazy_lbt_rrt"; }

  [[nodiscard]] Cost best_cost() const override { return approx_.cost(); }
  [[nodiscard]] Cost lower_bound_cost() const { return lower_.cost(); }

  [[nodiscard]] std::vector<VertexId> solution_vertices() const override { return approx_.path(); }

  /// g-values of the approximation search. Exact on the reported path only;
  /// elsewhere they are upper bounds restricted to what the search touched.
  [[nodiscard]] std::vector<Cost> vertex_costs() const override {
    std::vector<Cost> out(index().size());
    for (VertexId v = 0; v < out.size(); ++v) out[v] = approx_.g(v);
    return out;
  }

  [[nodiscard]] RoadmapView roadmap() const override {
    RoadmapView view{index().points(), vertex_costs(), std::vector<VertexId>(index().size(), kNoVertex), {}};
    const auto path = approx_.path();
    for (std::size_t i = 1; i < path.size(); ++i) view.parent[path[i]] = path[i - 1];
    const auto& g = lower_.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const auto& a : g.out_arcs(v)) view.edges.push_back({v, a.vertex, a.weight});
    }
    return view;
  }

  [[nodiscard]] const dynsp::LpaStar& lower_search() const noexcept { return lower_; }
  [[nodiscard]] const dynsp::LpaStar& approx_search() const noexcept { return approx_; }
  [[nodiscard]] double approximation_factor() const noexcept { return factor_; }

  /// Inserts (x1, x2) into the lower-bound graph unchecked, then certifies
  /// edges of the lower-bound path to the goal, walking back from the goal,
  /// until the goal cost is within the approximation factor. Blocked edges
  /// leave the lower-bound graph and the search is repeated.
  void consider_edge(VertexId x1, VertexId x2) {
    if (lower_.graph().has_edge(x1, x2)) return;
    lower_.insert_edge(x1, x2, distance(x1, x2));

    // Each pass certifies edges of the current lower-bound path from the goal
    // backward until the goal is approximated or an edge is blocked.
    while (true) {
      VertexId x = lower_.shortest_path();
      bool blocked = false;
      while (x != kNoVertex && x != lower_.source() && approx_.cost() > factor_ * lower_.cost()) {
        const VertexId p = lower_.parent(x);
        if (!certify(p, x)) {
          lower_.delete_edge(p, x);
          blocked = true;
          break;
        }
        if (!approx_.graph().has_edge(p, x)) {
          approx_.insert_edge(p, x, *lower_.graph().weight(p, x));
          approx_.shortest_path();
        }
        x = p;
      }
      if (!blocked) break;
    }
    approx_.shortest_path();
  }

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override {
    attach_vertex(nearest, v, weight);
    const auto near = near_set(v);
    for (VertexId x : near) consider_edge(x, v);
    for (VertexId x : near) consider_edge(v, x);
  }

  /// Registers v and its certified edge to `nearest` in both searches.
  void attach_vertex(VertexId nearest, VertexId v, Cost weight) {
    add_search_vertex(v);
    lower_.insert_edge(nearest, v, weight);
    lower_.insert_edge(v, nearest, weight);
    approx_.insert_edge(nearest, v, weight);
    approx_.insert_edge(v, nearest, weight);
    refresh();
  }

  [[nodiscard]] std::uint64_t edge_count() const override { return lower_.graph().edge_count(); }

 private:
  void add_search_vertex(VertexId v) {
    const auto& s = scenario();
    const auto& q = index().at(v);
    const bool goal = cspace::in_goal(s, q);
    const Cost h = std::max(0.0, cspace::distance(s.space, q, s.goal.center) - s.goal.radius);
    lower_.add_vertex(goal, h);
    approx_.add_vertex(goal, h);
  }

  void refresh() {
    lower_.shortest_path();
    approx_.shortest_path();
  }

  dynsp::LpaStar lower_;
  dynsp::LpaStar approx_;
  double factor_;
};

}  // namespace lbt::planners
