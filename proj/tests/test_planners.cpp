#include <gtest/gtest.h>

#include <memory>
#include <set>

#include "lbt/bench/run.hpp"
#include "lbt/bench/scenarios.hpp"
#include "lbt/planners/lazy_lbt_rrt.hpp"
#include "lbt/planners/lbt_rrt.hpp"
#include "lbt/planners/rrg.hpp"
#include "lbt/planners/rrt.hpp"
#include "lbt/planners/rrt_star.hpp"
#include "lbt/planners/shadow_check.hpp"
#include "lbt/postprocess/shortcut.hpp"
#include "support/oracles.hpp"

using namespace lbt;
using namespace lbt::planners;
using cspace::Configuration;

namespace {

PlannerParams iterations(std::uint64_t n, std::uint64_t seed, double epsilon = 0.0) {
  PlannerParams p;
  p.stop = StopCondition::iterations(n);
  p.seed = seed;
  p.epsilon = epsilon;
  return p;
}

cspace::Scenario open_world() {
  cspace::Scenario s = test::box_world(1.0, {}, {0, 0}, {1, 0}, 0.2);
  s.space = cspace::euclidean_space({{-2, 2}, {-2, 2}});
  return s;
}

template <typename P>
std::unique_ptr<P> run(const cspace::Scenario& s, const PlannerParams& p) {
  auto planner = std::make_unique<P>(s, p, [] { return 0.0; });
  planner->run();
  return planner;
}

// Cost-to-come over the planner's lower-bound graph, from scratch.
test::Adjacency lower_graph(const dynsp::DynamicGraph& g) {
  test::Adjacency adj(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const auto& a : g.out_arcs(u)) adj[u].push_back({a.vertex, a.weight});
  }
  return adj;
}

void expect_feasible(const cspace::Scenario& s, const cspace::Path& path, double resolution) {
  ASSERT_FALSE(path.empty());
  EXPECT_EQ(path.front(), s.start);
  EXPECT_TRUE(cspace::in_goal(s, path.back()));
  for (std::size_t i = 1; i < path.size(); ++i) {
    EXPECT_TRUE(cspace::collision_free_motion(s, path[i - 1], path[i], resolution));
  }
}

// Roadmap with a wall at x in [1.9, 2.1], y in [-4, 2], and five scripted
// vertices: 0 (0,0) start, 1 (0,3), 2 (4,3), 3 (4,0), 4 (1,-1), each hung off
// the listed parent: 1<-0, 2<-1, 3<-2, 4<-1. Edge (0,3) and edge (4,3) cross
// the wall; every tree edge is free.
cspace::Scenario scripted_world(bool wall) {
  cspace::Scenario s = test::box_world(1.0, {}, {0, 0}, {4, 0}, 0.3);
  s.space = cspace::euclidean_space({{-5, 5}, {-5, 5}});
  if (wall) s.obstacles.emplace_back(cspace::Polygon{{1.9, -4}, {2.1, -4}, {2.1, 2}, {1.9, 2}});
  return s;
}

template <typename P>
void script_vertices(P& planner) {
  planner.insert_vertex(0, {0, 3});
  planner.insert_vertex(1, {4, 3});
  planner.insert_vertex(2, {4, 0});
  planner.insert_vertex(1, {1, -1});
}

class ScriptedLbt : public LbtRrt {
 public:
  using LbtRrt::LbtRrt;

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override { attach_vertex(nearest, v, weight); }
};

class ScriptedLazy : public LazyLbtRrt {
 public:
  using LazyLbtRrt::LazyLbtRrt;

 protected:
  void on_new_vertex(VertexId nearest, VertexId v, Cost weight) override { attach_vertex(nearest, v, weight); }
};

void expect_invariant(const ScriptedLbt& p) {
  const auto lb = test::dijkstra(lower_graph(p.lower_bound().graph()), 0);
  ASSERT_EQ(lb, p.lower_bound().costs());
  for (VertexId v = 0; v < lb.size(); ++v) {
    EXPECT_LE(p.approximation().cost(v), p.approximation_factor() * lb[v]) << v;
  }
}

}  // namespace

TEST(Rrt, SolvesOpenWorldQuickly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = iterations(200, seed);
    p.eta = 0.5;
    p.stop.first_solution = true;
    auto s = open_world();
    auto rrt = run<Rrt>(s, p);
    ASSERT_TRUE(rrt->solution()) << seed;
    expect_feasible(s, *rrt->solution(), p.resolution(s));
    EXPECT_EQ(rrt->trace().status, RunStatus::Solved);
  }
}

TEST(Rrt, ZeroIterationsKeepsOnlyStart) {
  auto s = open_world();
  for (auto make : {+[](const cspace::Scenario& sc) -> std::unique_ptr<Planner> { return run<Rrt>(sc, iterations(0, 1)); },
                    +[](const cspace::Scenario& sc) -> std::unique_ptr<Planner> { return run<RrtStar>(sc, iterations(0, 1)); },
                    +[](const cspace::Scenario& sc) -> std::unique_ptr<Planner> { return run<LbtRrt>(sc, iterations(0, 1)); }}) {
    auto p = make(s);
    EXPECT_EQ(p->index().size(), 1u);
    EXPECT_EQ(p->roadmap().vertices, (std::vector<Configuration>{s.start}));
  }
}

TEST(Rrt, EnclosedGoalHasNoSolution) {
  // Goal ball inside a closed ring of four walls.
  auto s = test::box_world(10.0, {{6, 6, 9, 6.5}, {6, 8.5, 9, 9}, {6, 6, 6.5, 9}, {8.5, 6, 9, 9}}, {1, 1}, {7.5, 7.5},
                           0.5);
  for (const char* name : {"rrt", "rrg", "lbt_rrt", "lazy_lbt_rrt"}) {
    bench::RunRequest req;
    req.planner = name;
    req.stop = StopCondition::iterations(300);
    const auto out = bench::run_planner(s, req);
    EXPECT_FALSE(out.solved()) << name;
    EXPECT_EQ(out.trace.status, RunStatus::NoSolution) << name;
  }
}

TEST(Planners, SameSeedSameVertexSet) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto p = iterations(400, seed, 0.2);
    const auto ref = run<Rrt>(s, p)->index().points();
    EXPECT_EQ(run<Rrg>(s, p)->index().points(), ref);
    EXPECT_EQ(run<RrtStar>(s, p)->index().points(), ref);
    EXPECT_EQ(run<LbtRrt>(s, p)->index().points(), ref);
    EXPECT_EQ(run<LazyLbtRrt>(s, p)->index().points(), ref);
  }
}

TEST(Planners, DeterministicRuns) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (const auto& name : bench::kPlannerNames) {
    bench::RunRequest req;
    req.planner = std::string(name);
    req.seed = 5;
    req.epsilon = 0.3;
    req.stop = StopCondition::iterations(bench::is_batch_planner(name) ? 3 : 400);
    const auto a = bench::run_planner(s, req), b = bench::run_planner(s, req);
    ASSERT_EQ(a.trace.events.size(), b.trace.events.size()) << name;
    for (std::size_t i = 0; i < a.trace.events.size(); ++i) {
      EXPECT_EQ(a.trace.events[i].iteration, b.trace.events[i].iteration);
      EXPECT_EQ(a.trace.events[i].best_cost, b.trace.events[i].best_cost);
    }
    EXPECT_EQ(a.trace.counters.lp_calls, b.trace.counters.lp_calls) << name;
    EXPECT_EQ(a.trace.counters.cc_calls, b.trace.counters.cc_calls) << name;
    EXPECT_EQ(a.roadmap.vertices, b.roadmap.vertices) << name;
    EXPECT_EQ(a.roadmap.parent, b.roadmap.parent) << name;
    EXPECT_EQ(a.roadmap.cost, b.roadmap.cost) << name;
    EXPECT_EQ(a.roadmap.edges.size(), b.roadmap.edges.size()) << name;
  }
}

TEST(Planners, TracesMonotoneAndPathsFeasible) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (const auto& name : bench::kPlannerNames) {
    bench::RunRequest req;
    req.planner = std::string(name);
    req.seed = 2;
    req.epsilon = 0.2;
    req.stop = StopCondition::iterations(bench::is_batch_planner(name) ? 4 : 1500);
    const auto out = bench::run_planner(s, req);
    for (std::size_t i = 1; i < out.trace.events.size(); ++i) {
      EXPECT_LT(out.trace.events[i].best_cost, out.trace.events[i - 1].best_cost) << name;
    }
    if (out.path) {
      expect_feasible(s, *out.path, 0.01 * s.space.diagonal());
      EXPECT_NEAR(postprocess::path_cost(s.space, *out.path), out.trace.best_cost(), 1e-9) << name;
    }
  }
}

TEST(Rrg, CostDominatesRrtAndConvergesInOpenSpace) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = iterations(1500, seed);
    const auto rrt = run<Rrt>(s, p);
    const auto rrg = run<Rrg>(s, p);
    if (rrt->solution() && rrg->solution()) {
      EXPECT_LE(rrg->best_cost(), rrt->best_cost());
    }
  }
  const auto empty = bench::bundled_scenario("empty");
  auto p = iterations(4000, 3);
  p.eta = 0.5;
  const auto rrg = run<Rrg>(empty, p);
  const double straight = cspace::distance(empty.space, empty.start, empty.goal.center) - empty.goal.radius;
  EXPECT_LE(rrg->best_cost(), 1.05 * straight);
}

TEST(RrtStar, TreeInsideRrgGraph) {
  const auto s = bench::bundled_scenario("maze");
  const auto p = iterations(800, 4);
  const auto star = run<RrtStar>(s, p);
  const auto rrg = run<Rrg>(s, p);
  const auto& graph = rrg->graph_state();
  const auto& tree = star->tree();
  for (VertexId v = 1; v < tree.size(); ++v) {
    EXPECT_TRUE(graph.graph().has_edge(tree.parent(v), v)) << v;
    EXPECT_GE(tree.cost(v), graph.cost(v)) << v;
  }
}

TEST(LbtRrt, EpsilonZeroMatchesRrgCosts) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  const auto p = iterations(800, 8, 0.0);
  const auto lbt = run<LbtRrt>(s, p);
  const auto rrg = run<Rrg>(s, p);
  const auto& ref = rrg->graph_state().costs();
  const auto& apx = lbt->approximation().costs();
  ASSERT_EQ(apx.size(), ref.size());
  for (VertexId v = 0; v < ref.size(); ++v) EXPECT_LE(std::abs(apx[v] - ref[v]), 1e-9 * (1 + ref[v])) << v;
}

TEST(LbtRrt, HugeEpsilonBehavesLikeRrt) {
  const auto s = bench::bundled_scenario("maze");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto p = iterations(800, seed, 1e9);
    const auto lbt = run<LbtRrt>(s, p);
    const auto rrt = run<Rrt>(s, p);
    EXPECT_EQ(lbt->approximation().parents(), rrt->tree().parents());
    EXPECT_EQ(lbt->trace().counters.lp_calls, rrt->trace().counters.lp_calls);
  }
}

TEST(LbtRrt, SolutionWithinFactorOfRrgAndCallSandwich) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (double eps : {0.1, 0.4}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto p = iterations(1200, seed, eps);
      const auto lbt = run<LbtRrt>(s, p);
      const auto rrg = run<Rrg>(s, p);
      const auto rrt = run<Rrt>(s, p);
      if (lbt->solution() && rrg->solution()) {
        EXPECT_LE(lbt->best_cost(), (1 + eps) * rrg->best_cost());
      }
      EXPECT_LE(rrt->trace().counters.lp_calls, lbt->trace().counters.lp_calls);
      EXPECT_LE(lbt->trace().counters.lp_calls, rrg->trace().counters.lp_calls);
    }
  }
}

TEST(ConsiderEdge, NonImprovingInsertionIsFree) {
  const auto s = scripted_world(true);
  ScriptedLbt p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  const auto calls = p.local_planner().stats().motion_checks;
  const auto costs = p.lower_bound().costs();
  p.consider_edge(4, 3);  // lb(4) + |43| = 3 + sqrt(17) + sqrt(10) > lb(3) = 10
  EXPECT_TRUE(p.lower_bound().graph().has_edge(4, 3));
  EXPECT_EQ(p.lower_bound().costs(), costs);
  EXPECT_EQ(p.local_planner().stats().motion_checks, calls);
  expect_invariant(p);
}

TEST(ConsiderEdge, ViolatingBlockedEdgeNeverEntersLowerGraph) {
  const auto s = scripted_world(true);
  ScriptedLbt p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  const auto parents = p.approximation().parents();
  const auto calls = p.local_planner().stats().motion_checks;
  p.consider_edge(0, 3);
  EXPECT_FALSE(p.lower_bound().graph().has_edge(0, 3));
  EXPECT_EQ(p.approximation().parents(), parents);
  EXPECT_EQ(p.local_planner().stats().motion_checks, calls + 1);
  expect_invariant(p);
}

TEST(ConsiderEdge, BlockedLazyEdgeIsRemovedDuringRepair) {
  const auto s = scripted_world(true);
  ScriptedLbt p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  p.consider_edge(4, 3);  // lazy, uncertified
  const auto calls = p.local_planner().stats().motion_checks;
  p.consider_edge(0, 4);  // certifies (0,4); repair then reaches 3 through (4,3)
  EXPECT_TRUE(p.lower_bound().graph().has_edge(0, 4));
  EXPECT_FALSE(p.lower_bound().graph().has_edge(4, 3));
  EXPECT_EQ(p.approximation().parent(4), 0u);
  EXPECT_EQ(p.approximation().parent(3), 2u);
  EXPECT_DOUBLE_EQ(p.lower_bound().cost(3), 10.0);
  EXPECT_EQ(p.local_planner().stats().motion_checks, calls + 2);
  expect_invariant(p);
}

TEST(ConsiderEdge, FreeLazyEdgeRewiresToShortestPathTree) {
  const auto s = scripted_world(false);
  ScriptedLbt p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  p.consider_edge(4, 3);
  p.consider_edge(0, 4);
  EXPECT_EQ(p.approximation().parent(4), 0u);
  EXPECT_EQ(p.approximation().parent(3), 4u);
  const auto lb = test::dijkstra(lower_graph(p.lower_bound().graph()), 0);
  for (VertexId v = 0; v < lb.size(); ++v) EXPECT_DOUBLE_EQ(p.approximation().cost(v), lb[v]) << v;
  for (VertexId v = 1; v < lb.size(); ++v) EXPECT_EQ(p.approximation().parent(v), p.lower_bound().parent(v));
}

TEST(LazyConsiderEdge, BlockedEdgeOnGoalPathIsDropped) {
  const auto s = scripted_world(true);
  ScriptedLazy p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  EXPECT_DOUBLE_EQ(p.best_cost(), 10.0);
  const auto calls = p.local_planner().stats().motion_checks;
  p.consider_edge(0, 3);
  EXPECT_FALSE(p.lower_search().graph().has_edge(0, 3));
  EXPECT_DOUBLE_EQ(p.lower_bound_cost(), 10.0);
  EXPECT_DOUBLE_EQ(p.best_cost(), 10.0);
  EXPECT_EQ(p.local_planner().stats().motion_checks, calls + 1);
}

TEST(LazyConsiderEdge, FreeEdgeOnGoalPathIsAdopted) {
  const auto s = scripted_world(false);
  ScriptedLazy p(s, iterations(0, 0, 0.0));
  script_vertices(p);
  p.consider_edge(0, 3);
  EXPECT_TRUE(p.approx_search().graph().has_edge(0, 3));
  EXPECT_DOUBLE_EQ(p.best_cost(), 4.0);
  EXPECT_DOUBLE_EQ(p.lower_bound_cost(), 4.0);
}

TEST(LazyLbtRrt, NoSolutionMeansRrtCallCount) {
  const auto s = bench::bundled_scenario("maze");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = iterations(600, seed, 0.2);
    const auto lazy = run<LazyLbtRrt>(s, p);
    const auto rrt = run<Rrt>(s, p);
    if (lazy->solution()) continue;
    EXPECT_EQ(lazy->trace().counters.lp_calls, rrt->trace().counters.lp_calls) << seed;
  }
}

TEST(LazyLbtRrt, GoalInvariantAfterEveryIteration) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (double eps : {0.0, 0.3}) {
    LazyLbtRrt p(s, iterations(1500, 3, eps), [] { return 0.0; });
    while (!p.should_stop()) {
      p.step();
      if (p.best_cost() < kInfiniteCost) {
        ASSERT_LE(p.best_cost(), (1 + eps) * p.lower_bound_cost());
      }
    }
    EXPECT_TRUE(p.solution());
  }
}

TEST(LazyLbtRrt, HugeEpsilonTracksRrt) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto p = iterations(1200, seed, 1e9);
    const auto lazy = run<LazyLbtRrt>(s, p);
    const auto rrt = run<Rrt>(s, p);
    ASSERT_EQ(lazy->trace().events.size(), rrt->trace().events.size());
    for (std::size_t i = 0; i < rrt->trace().events.size(); ++i) {
      EXPECT_EQ(lazy->trace().events[i].iteration, rrt->trace().events[i].iteration);
      EXPECT_NEAR(lazy->trace().events[i].best_cost, rrt->trace().events[i].best_cost, 1e-9);
    }
  }
}

TEST(ShadowCheck, CleanRunsForEveryTreePlanner) {
  const auto s = bench::bundled_scenario("alternating_gaps");
  for (const char* name : {"rrt", "rrg", "rrt_star", "rrt_rrt_star", "lbt_rrt", "lazy_lbt_rrt"}) {
    bench::RunRequest req;
    req.planner = name;
    req.seed = 1;
    req.epsilon = 0.1;
    req.check = true;
    req.stop = StopCondition::iterations(600);
    const auto out = bench::run_planner(s, req);
    ASSERT_TRUE(out.report);
    EXPECT_TRUE(out.report->empty()) << name << ": " << out.report->violations.front().kind;
  }
}

TEST(ShadowCheck, EpsilonZeroReportsEquality) {
  const auto s = bench::bundled_scenario("maze");
  ShadowRun shadow(std::make_unique<LbtRrt>(s, iterations(500, 2, 0.0)), s, iterations(500, 2, 0.0));
  const auto& report = shadow.run();
  EXPECT_TRUE(report.empty());
  EXPECT_TRUE(report.equality_checked);
  EXPECT_LE(report.max_equality_gap, 1e-9 * 100);
}

TEST(ShadowCheck, DetectsCorruptedCosts) {
  const std::vector<Cost> ref{0.0, 1.0, 2.0, 3.0};
  ViolationReport clean;
  audit_costs(1, ref, ref, ref, 1.0, true, clean);
  EXPECT_TRUE(clean.empty());

  auto approx = ref;
  approx[2] = 2.5;  // breaks the bound at factor 1.1 and the equality
  ViolationReport bad;
  audit_costs(1, approx, ref, ref, 1.1, true, bad);
  ASSERT_EQ(bad.total(), 2u);
  EXPECT_EQ(bad.violations[0].kind, "bounded_approximation");
  EXPECT_EQ(bad.violations[1].kind, "epsilon_zero_equality");
  EXPECT_EQ(bad.violations[0].vertex, 2u);

  auto lower = ref;
  lower[3] = 3.5;  // lower bound above the reference
  ViolationReport above;
  audit_costs(1, ref, lower, ref, 2.0, false, above);
  ASSERT_EQ(above.total(), 1u);
  EXPECT_EQ(above.violations[0].kind, "lower_bound");
}
