#pragma once

#include <string>
#include <vector>

#include "lbt/dynsp/sssp.hpp"
#include "lbt/planners/planner.hpp"

namespace lbt::planners {

/// RRG: every collision-free pair among the k_RRG log|V| nearest neighbors is
/// connected in both directions. Cost-to-come is maintained incrementally.
class Rrg : public Planner {
 public:
  Rrg(const cspace::Scenario& scenario, const PlannerParams& params, Clock clock = {})
      : Planner(scenario, params, std::move(clock)), sssp_(0) {
    sssp_.add_vertex();
  }

  [[nodiscard]] std::string name() const override { return "rrg"; }

  [[nodiscard]] Cost best_cost() const override {
    const VertexId g = best_goal();
    return g == kNoVertex ? kInfiniteCost : sssp_.cost(g);
  }

  [[nodiscard]] std::vector<VertexId> solution_vertices() const override {
    std::vector<VertexId> out;
    const VertexId g = best_goal();
    if (g == kNoVertex) return out;
    for (VertexId x = g; x != kNoVertex; x = sssp_.parent(x)) out.push_back(x);
    return {out.rbegin(), out.rend()};
  }

  [[nodiscard]] std::vector<Cost> vertex_costs() const override { return sssp_.costs(); }

  [[nodiscard]] RoadmapView roadmap() const override {
    RoadmapView view{index().points(), sssp_.costs(), {}, {}};
    const auto& g = sssp_.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      view.parent.push_back(sssp_.parent(v));
      for (const auto& a : g.out_arcs(v)) view.edges.push_back({v, a.vertex, a.weight});
    }
    return view;
  }

  [[nodiscard]] const dynsp::DynamicSssp& graph_state() const noexcept { return sssp_; }

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override {
    sssp_.add_vertex();
    sssp_.insert_edge(nearest, v, weight);
    sssp_.insert_edge(v, nearest, weight);
    for (VertexId near : near_set(v)) {
      if (near == nearest) continue;
      if (!certify(near, v)) continue;
      const Cost w = distance(near, v);
      sssp_.insert_edge(near, v, w);
      sssp_.insert_edge(v, near, w);
    }
  }

  [[nodiscard]] std::uint64_t edge_count() const override { return sssp_.graph().edge_count(); }
  [[nodiscard]] std::uint64_t delta_hat() const override { return sssp_.max_affected(); }

 private:
  [[nodiscard]] VertexId best_goal() const {
    return best_goal_vertex(goal_vertices(), [this](VertexId g) { return sssp_.cost(g); });
  }

  dynsp::DynamicSssp sssp_;
};

}  // namespace lbt::planners
