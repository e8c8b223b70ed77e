#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lbt/planners/lazy_lbt_rrt.hpp"
#include "lbt/planners/lbt_rrt.hpp"
#include "lbt/planners/planner.hpp"
#include "lbt/planners/rrg.hpp"
#include "lbt/planners/rrt.hpp"
#include "lbt/planners/rrt_star.hpp"

namespace lbt::planners {

struct Violation {
  std::uint64_t iteration = 0;
  std::string kind;
  VertexId vertex = kNoVertex;
  std::string detail;
};

/// Outcome of a shadow-checked run. `max_equality_gap` is only filled for
/// epsilon = 0 LBT runs, where approximation and reference costs must agree.
struct ViolationReport {
  std::vector<Violation> violations;
  std::uint64_t iterations_checked = 0;
  bool equality_checked = false;
  double max_equality_gap = 0.0;

  [[nodiscard]] bool empty() const noexcept { return violations.empty(); }

  void add(std::uint64_t iteration, std::string kind, VertexId v, std::string detail) {
    // Keep the report readable when one defect repeats every iteration.
    if (violations.size() < kMaxStored) violations.push_back({iteration, std::move(kind), v, std::move(detail)});
    ++total_;
  }

  [[nodiscard]] std::size_t total() const noexcept { return total_; }

  static constexpr std::size_t kMaxStored = 1000;

 private:
  std::size_t total_ = 0;
};

inline std::string format_cost_pair(Cost a, Cost b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g vs %.17g", a, b);
  return buf;
}

/// Per-vertex cost audit shared by the shadow checker and its own tests:
/// bounded approximation (approx <= factor * lower), lower bound
/// (lower <= reference) and, when requested, approx == reference within
/// 1e-9 * (1 + cost). All three vectors are indexed by vertex id.
inline void audit_costs(std::uint64_t iteration, const std::vector<Cost>& approx, const std::vector<Cost>& lower,
                        const std::vector<Cost>& reference, double factor, bool check_equality,
                        ViolationReport& report) {
  const std::size_t n = std::min({approx.size(), lower.size(), reference.size()});
  for (VertexId x = 0; x < n; ++x) {
    if (approx[x] > factor * lower[x]) {
      report.add(iteration, "bounded_approximation", x, format_cost_pair(approx[x], factor * lower[x]));
    }
    if (lower[x] > reference[x]) {
      report.add(iteration, "lower_bound", x, format_cost_pair(lower[x], reference[x]));
    }
    if (check_equality) {
      const double gap = std::abs(approx[x] - reference[x]);
      if (reference[x] < kInfiniteCost) report.max_equality_gap = std::max(report.max_equality_gap, gap);
      if (!(gap <= 1e-9 * (1.0 + reference[x])) && !(approx[x] == reference[x])) {
        report.add(iteration, "epsilon_zero_equality", x, format_cost_pair(approx[x], reference[x]));
      }
    }
  }
}

/// Runs a planner in lockstep with a reference RRG drawn from the same seed
/// and audits the pair at every iteration boundary:
///  - both roadmaps hold the same vertices;
///  - every reference RRG edge is present in the planner's lower-bound graph
///    (LBT variants) or every planner edge is an RRG edge (RRT, RRT*);
///  - the cost invariants of the planner (see audit_costs);
///  - every edge of the solution structure was certified free.
class ShadowRun {
 public:
  ShadowRun(std::unique_ptr<Planner> subject, const cspace::Scenario& scenario, PlannerParams params)
      : subject_(std::move(subject)) {
    params.stop = StopCondition{};
    shadow_ = std::make_unique<Rrg>(scenario, params, [] { return 0.0; });
  }

  [[nodiscard]] Planner& subject() noexcept { return *subject_; }
  [[nodiscard]] const Rrg& shadow() const noexcept { return *shadow_; }
  [[nodiscard]] const ViolationReport& report() const noexcept { return report_; }

  void step() {
    subject_->step();
    shadow_->step();
    audit(false);
  }

  /// Steps until the subject's stop condition holds, then runs a final full
  /// edge audit. Returns the report.
  const ViolationReport& run() {
    audit(false);
    while (!subject_->should_stop()) step();
    subject_->finish();
    shadow_->finish();
    audit(true);
    return report_;
  }

 private:
  void audit(bool full) {
    const std::uint64_t it = subject_->iteration();
    ++report_.iterations_checked;
    const auto& a = subject_->index();
    const auto& b = shadow_->index();
    if (a.size() != b.size()) {
      report_.add(it, "vertex_set", static_cast<VertexId>(std::min(a.size(), b.size())), "vertex counts differ");
      return;
    }
    // New vertices are appended, so comparing the newest is enough per step.
    const VertexId first = full ? 0 : static_cast<VertexId>(a.size() - 1);
    for (VertexId v = first; v < a.size(); ++v) {
      if (!(a.at(v) == b.at(v))) report_.add(it, "vertex_set", v, "configurations differ");
    }

    if (auto* lbt = dynamic_cast<LbtRrt*>(subject_.get())) {
      audit_lbt(*lbt, it, first);
    } else if (auto* lazy = dynamic_cast<LazyLbtRrt*>(subject_.get())) {
      audit_lazy(*lazy, it, first);
    } else if (auto* star = dynamic_cast<RrtStar*>(subject_.get())) {
      audit_tree(star->tree(), it);
      // The RRT* tree lives inside the RRG graph, so it can never be cheaper.
      const auto& tree_cost = star->tree().costs();
      const auto& ref_cost = shadow_->graph_state().costs();
      for (VertexId v = 0; v < tree_cost.size(); ++v) {
        if (tree_cost[v] < ref_cost[v]) report_.add(it, "below_rrg_cost", v, format_cost_pair(tree_cost[v], ref_cost[v]));
      }
    } else if (auto* rrt = dynamic_cast<Rrt*>(subject_.get())) {
      audit_tree(rrt->tree(), it);
    }
  }

  // Reference RRG edges incident to vertices >= first must be in `graph`.
  void audit_reference_edges(const dynsp::DynamicGraph& graph, std::uint64_t it, VertexId first) {
    const auto& ref = shadow_->graph_state().graph();
    for (VertexId v = first; v < ref.vertex_count(); ++v) {
      for (const auto& arc : ref.out_arcs(v)) {
        if (!graph.has_edge(v, arc.vertex)) report_.add(it, "rrg_edge_missing", v, std::to_string(arc.vertex));
      }
      for (const auto& arc : ref.in_arcs(v)) {
        if (!graph.has_edge(arc.vertex, v)) report_.add(it, "rrg_edge_missing", arc.vertex, std::to_string(v));
      }
    }
  }

  void audit_certified(VertexId u, VertexId v, std::uint64_t it) {
    const auto status = subject_->local_planner().cache().find(u, v);
    if (!status || *status != EdgeStatus::Free) report_.add(it, "uncertified_edge", v, std::to_string(u));
  }

  void audit_lbt(const LbtRrt& p, std::uint64_t it, VertexId first) {
    const double factor = p.approximation_factor();
    audit_costs(it, p.approximation().costs(), p.lower_bound().costs(), shadow_->graph_state().costs(), factor,
                factor == 1.0, report_);
    report_.equality_checked = factor == 1.0;
    audit_reference_edges(p.lower_bound().graph(), it, first);
    const auto& tree = p.approximation();
    for (VertexId v = 1; v < tree.size(); ++v) audit_certified(tree.parent(v), v, it);
  }

  void audit_lazy(const LazyLbtRrt& p, std::uint64_t it, VertexId first) {
    // LPA* stops within a 1e-12 relative slack of the exact goal cost.
    const double slack = 1.0 + 1e-12;
    const Cost apx = p.best_cost();
    const Cost lb = p.lower_bound_cost();
    const Cost ref = shadow_->best_cost();
    if (apx > p.approximation_factor() * lb * slack) {
      report_.add(it, "bounded_approximation", p.approx_search().goal_vertex(), format_cost_pair(apx, lb));
    }
    if (lb > ref * slack) report_.add(it, "lower_bound", p.lower_search().goal_vertex(), format_cost_pair(lb, ref));
    audit_reference_edges(p.lower_search().graph(), it, first);
    const auto& g = p.approx_search().graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const auto& arc : g.out_arcs(v)) audit_certified(v, arc.vertex, it);
    }
  }

  // Rewiring can change any parent, so every tree edge is rechecked.
  void audit_tree(const CostTree& tree, std::uint64_t it) {
    const auto& ref = shadow_->graph_state().graph();
    for (VertexId v = 1; v < tree.size(); ++v) {
      const VertexId p = tree.parent(v);
      if (!ref.has_edge(p, v)) report_.add(it, "edge_not_in_rrg", v, std::to_string(p));
      audit_certified(p, v, it);
    }
  }

  std::unique_ptr<Planner> subject_;
  std::unique_ptr<Rrg> shadow_;
  ViolationReport report_;
};

}  // namespace lbt::planners
