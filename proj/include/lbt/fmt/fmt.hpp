#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbt/core/indexed_heap.hpp"
#include "lbt/core/types.hpp"
#include "lbt/cspace/sampling.hpp"
#include "lbt/cspace/scenario.hpp"
#include "lbt/nn/neighbor_index.hpp"
#include "lbt/planners/common.hpp"
#include "lbt/planners/shadow_check.hpp"

namespace lbt::fmt {

using planners::AnytimeTrace;
using planners::Clock;
using planners::LocalPlanner;
using planners::RunStatus;
using planners::StopCondition;
using planners::ViolationReport;

/// gamma * (ln n / n)^(1/d).
inline double connection_radius(std::size_t n, std::size_t d, double gamma) {
  if (n < 2) throw std::invalid_argument("connection_radius needs n >= 2");
  if (d == 0) throw std::invalid_argument("connection_radius needs d >= 1");
  const double nn = static_cast<double>(n);
  return gamma * std::pow(std::log(nn) / nn, 1.0 / static_cast<double>(d));
}

inline double unit_ball_volume(std::size_t d) {
  const double h = 0.5 * static_cast<double>(d);
  return std::pow(kPi, h) / std::tgamma(h + 1.0);
}

/// 1.1 * 2 * (vol / (d * unit ball))^(1/d), with vol the volume of the
/// bounding box (angular extent 2*pi scaled by the angular weight) and
/// obstacles ignored, which overestimates on purpose.
inline double default_gamma(const cspace::SpaceDefinition& space) {
  const std::size_t d = space.dimension();
  double vol = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    vol *= space.is_angular(i) ? kTwoPi * space.angular_weight : space.bounds[i].upper - space.bounds[i].lower;
  }
  const double dd = static_cast<double>(d);
  return 1.1 * 2.0 * std::pow(vol / (dd * unit_ball_volume(d)), 1.0 / dd);
}

/// Start configuration (id 0) followed by free samples in draw order.
/// Growing the set only appends, so ids stay valid across doublings.
class SampleSet {
 public:
  SampleSet(const cspace::Scenario& scenario, std::uint64_t seed) : scenario_(&scenario), rng_(seed) {
    points_.push_back(scenario.start);
  }

  /// Appends free samples until there are `samples` of them besides the start.
  void grow_to(std::size_t samples, cspace::CollisionStats* stats) {
    while (points_.size() < samples + 1) points_.push_back(cspace::sample_free(*scenario_, rng_, stats));
  }

  [[nodiscard]] const std::vector<cspace::Configuration>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t samples() const noexcept { return points_.size() - 1; }

 private:
  const cspace::Scenario* scenario_;
  Rng rng_;
  std::vector<cspace::Configuration> points_;
};

/// Result of one batch search over a fixed sample set.
struct SearchResult {
  RunStatus status = RunStatus::NoSolution;
  bool aborted = false;                  // deadline hit mid-search
  Cost cost = kInfiniteCost;             // cost of the returned path
  std::vector<VertexId> path;            // start first
  std::vector<VertexId> parent;          // tree read for the path
  std::vector<Cost> tree_cost;
  double radius = 0.0;
};

namespace detail {

inline std::vector<std::vector<VertexId>> neighbor_lists(const cspace::SpaceDefinition& space,
                                                         const std::vector<cspace::Configuration>& points,
                                                         double radius) {
  nn::NeighborIndex index(space);
  for (const auto& q : points) index.insert(q);
  std::vector<std::vector<VertexId>> lists(points.size());
  for (VertexId v = 0; v < points.size(); ++v) lists[v] = index.radius_near(points[v], radius, v);
  return lists;
}

inline std::vector<VertexId> trace_back(const std::vector<VertexId>& parent, VertexId goal) {
  std::vector<VertexId> out;
  for (VertexId x = goal; x != kNoVertex; x = parent[x]) {
    out.push_back(x);
    if (out.size() > parent.size()) throw std::logic_error("cycle in search tree");
  }
  return {out.rbegin(), out.rend()};
}

// Polls the deadline every 64 expansions; clock reads are not free.
struct Deadline {
  const Clock* clock = nullptr;
  std::optional<double> limit;
  std::size_t ticks = 0;

  bool passed() {
    if (!clock || !limit) return false;
    if ((++ticks & 63u) != 0) return false;
    return (*clock)() >= *limit;
  }
};

enum class State : std::uint8_t { Unvisited, Open, Closed };

}  // namespace detail

/// One FMT* search over `points` (id 0 is the start) with connection radius r.
/// Every edge check goes through `local` (pass a fresh planner for plain FMT*).
inline SearchResult fmt_search(const cspace::Scenario& scenario, const std::vector<cspace::Configuration>& points,
                               double radius, LocalPlanner& local, detail::Deadline deadline = {}) {
  const auto& space = scenario.space;
  const std::size_t n = points.size();
  SearchResult out;
  out.radius = radius;
  out.parent.assign(n, kNoVertex);
  out.tree_cost.assign(n, kInfiniteCost);
  const auto near = detail::neighbor_lists(space, points, radius);

  std::vector<detail::State> state(n, detail::State::Unvisited);
  IndexedHeap<Cost> open;
  out.tree_cost[0] = 0.0;
  state[0] = detail::State::Open;
  open.push_or_update(0, 0.0);
  std::vector<VertexId> added;

  VertexId z = 0;
  while (!cspace::in_goal(scenario, points[z])) {
    if (deadline.passed()) {
      out.aborted = true;
      return out;
    }
    added.clear();
    for (VertexId x : near[z]) {
      if (state[x] != detail::State::Unvisited) continue;
      VertexId best = kNoVertex;
      Cost best_cost = kInfiniteCost;
      for (VertexId y : near[x]) {
        if (state[y] != detail::State::Open) continue;
        const Cost c = out.tree_cost[y] + cspace::distance(space, points[y], points[x]);
        if (c < best_cost) {
          best_cost = c;
          best = y;
        }
      }
      if (best == kNoVertex) continue;
      if (local.check(best, x, points[best], points[x])) {
        out.parent[x] = best;
        out.tree_cost[x] = best_cost;
        added.push_back(x);
      }
    }
    for (VertexId x : added) {
      state[x] = detail::State::Open;
      open.push_or_update(x, out.tree_cost[x]);
    }
    open.erase(z);
    state[z] = detail::State::Closed;
    if (open.empty()) return out;
    z = open.top();
  }
  out.status = RunStatus::Solved;
  out.cost = out.tree_cost[z];
  out.path = detail::trace_back(out.parent, z);
  return out;
}

/// One LBT-aFMT* search. Two trees share the open set, which is ordered by
/// lower-bound cost. A vertex adopts its lazy lower-bound parent without a
/// check whenever some already-certified neighbor keeps it within the
/// approximation factor; otherwise the lower-bound edge is checked. The path
/// is read from the approximation tree, so every edge on it is certified.
/// With `audit`, every admission is checked against the invariant.
inline SearchResult lbt_fmt_search(const cspace::Scenario& scenario,
                                   const std::vector<cspace::Configuration>& points, double radius,
                                   double epsilon, LocalPlanner& local, ViolationReport* audit = nullptr,
                                   detail::Deadline deadline = {}) {
  const auto& space = scenario.space;
  const std::size_t n = points.size();
  const double factor = 1.0 + epsilon;
  SearchResult out;
  out.radius = radius;
  out.parent.assign(n, kNoVertex);      // approximation tree
  out.tree_cost.assign(n, kInfiniteCost);
  std::vector<VertexId> lb_parent(n, kNoVertex);
  std::vector<Cost> lb_cost(n, kInfiniteCost);
  const auto near = detail::neighbor_lists(space, points, radius);

  std::vector<detail::State> state(n, detail::State::Unvisited);
  IndexedHeap<Cost> open;
  lb_cost[0] = 0.0;
  out.tree_cost[0] = 0.0;
  state[0] = detail::State::Open;
  open.push_or_update(0, 0.0);
  std::vector<VertexId> added;

  auto admit = [&](VertexId x, VertexId lb_from, Cost lb_c, VertexId apx_from, Cost apx_c) {
    lb_parent[x] = lb_from;
    lb_cost[x] = lb_c;
    out.parent[x] = apx_from;
    out.tree_cost[x] = apx_c;
    added.push_back(x);
    if (audit && apx_c > factor * lb_c) {
      audit->add(0, "bounded_approximation", x, planners::format_cost_pair(apx_c, factor * lb_c));
    }
  };

  VertexId z = 0;
  while (!cspace::in_goal(scenario, points[z])) {
    if (deadline.passed()) {
      out.aborted = true;
      return out;
    }
    added.clear();
    for (VertexId x : near[z]) {
      if (state[x] != detail::State::Unvisited) continue;
      VertexId y_lb = kNoVertex, y_apx = kNoVertex;
      Cost c_lb = kInfiniteCost, c_apx = kInfiniteCost;
      for (VertexId y : near[x]) {
        if (state[y] != detail::State::Open) continue;
        const Cost w = cspace::distance(space, points[y], points[x]);
        const Cost via_lb = lb_cost[y] + w;
        if (via_lb < c_lb) {
          c_lb = via_lb;
          y_lb = y;
        }
        const auto cached = local.cache().find(y, x);
        if (cached && *cached == planners::EdgeStatus::Free) {
          const Cost via_apx = out.tree_cost[y] + w;
          if (via_apx < c_apx) {
            c_apx = via_apx;
            y_apx = y;
          }
        }
      }
      if (y_lb == kNoVertex) continue;
      if (c_apx <= factor * c_lb) {
        admit(x, y_lb, c_lb, y_apx, c_apx);
      } else if (local.check(y_lb, x, points[y_lb], points[x])) {
        admit(x, y_lb, c_lb, y_lb, out.tree_cost[y_lb] + cspace::distance(space, points[y_lb], points[x]));
      }
    }
    for (VertexId x : added) {
      state[x] = detail::State::Open;
      open.push_or_update(x, lb_cost[x]);
    }
    open.erase(z);
    state[z] = detail::State::Closed;
    if (open.empty()) return out;
    z = open.top();
  }
  out.status = RunStatus::Solved;
  out.cost = out.tree_cost[z];
  out.path = detail::trace_back(out.parent, z);
  return out;
}

enum class BatchVariant { Fmt, AnytimeFmt, LbtAnytimeFmt };

inline const char* to_string(BatchVariant v) {
  switch (v) {
    case BatchVariant::Fmt: return "fmt";
    case BatchVariant::AnytimeFmt: return "afmt";
    case BatchVariant::LbtAnytimeFmt: return "lbt_afmt";
  }
  return "unknown";
}

struct BatchParams {
  std::size_t n0 = 100;         // samples of the first (or only) batch
  double gamma = 0.0;           // 0 selects default_gamma
  double epsilon = 0.0;         // LBT variant only
  StopCondition stop = StopCondition::iterations(4);  // iterations count doublings
  std::uint64_t seed = 0;
  double delta = 0.0;           // motion resolution; 0 selects 1% of the diagonal

  void validate() const {
    if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
    if (stop.max_iterations && *stop.max_iterations > kMaxDoublings) {
      throw std::invalid_argument("batch iteration budgets count doublings; at most " +
                                  std::to_string(kMaxDoublings) + " are allowed");
    }
  }
  static constexpr std::uint64_t kMaxDoublings = 24;
};

struct BatchRun {
  AnytimeTrace trace;
  std::optional<cspace::Path> best_path;
  std::vector<cspace::Configuration> samples;  // final sample set, start first
  SearchResult last;                           // last completed search
  std::size_t batches = 0;                     // completed searches
  ViolationReport audit;                       // LBT variant invariant audit
};

/// Runs FMT* once (Fmt) or repeatedly with doubling sample counts
/// (AnytimeFmt, LbtAnytimeFmt). Batch i uses batch i-1's samples plus as many
/// fresh ones. Iteration budgets count batches; a time budget may cut a
/// later batch short, in which case that batch is discarded.
inline BatchRun run_batch(const cspace::Scenario& scenario, BatchVariant variant, const BatchParams& params,
                          Clock clock = {}) {
  params.validate();
  if (!clock) clock = planners::steady_clock_from_now();
  const auto& space = scenario.space;
  const double gamma = params.gamma > 0.0 ? params.gamma : default_gamma(space);
  const double resolution = params.delta > 0.0 ? params.delta : 0.01 * space.diagonal();

  BatchRun run;
  run.trace.status = RunStatus::Running;
  SampleSet samples(scenario, params.seed);
  cspace::CollisionStats totals;           // sampling plus discarded-cache planners
  LocalPlanner persistent(scenario, resolution);
  std::uint64_t lp_calls = 0, cc_calls = 0;

  const auto& stop = params.stop;
  const std::uint64_t max_batches =
      variant == BatchVariant::Fmt ? 1 : stop.max_iterations.value_or(std::numeric_limits<std::uint64_t>::max());
  std::size_t n = params.n0;
  for (std::uint64_t batch = 0; batch < max_batches; ++batch) {
    if (batch > 0 && stop.time_budget_s && clock() >= *stop.time_budget_s) break;
    samples.grow_to(n, &totals);
    const auto& pts = samples.points();
    const double r = connection_radius(std::max<std::size_t>(pts.size(), 2), space.dimension(), gamma);
    // The first batch always completes so a tiny budget still yields a result.
    detail::Deadline deadline{&clock, batch == 0 ? std::nullopt : stop.time_budget_s};

    SearchResult result;
    if (variant == BatchVariant::LbtAnytimeFmt) {
      result = lbt_fmt_search(scenario, pts, r, params.epsilon, persistent, &run.audit, deadline);
    } else {
      LocalPlanner fresh(scenario, resolution);
      result = fmt_search(scenario, pts, r, fresh, deadline);
      lp_calls += fresh.stats().motion_checks;
      cc_calls += fresh.stats().config_checks;
    }
    if (result.aborted) break;
    ++run.batches;
    const Cost before = run.trace.best_cost();
    run.trace.offer(clock(), batch + 1, result.cost);
    if (result.cost < before) {
      cspace::Path path;
      for (VertexId v : result.path) path.push_back(pts[v]);
      run.best_path = std::move(path);
    }
    run.last = std::move(result);
    if (stop.first_solution && run.best_path) break;
    n *= 2;
  }

  auto& c = run.trace.counters;
  c.samples = samples.samples();
  c.lp_calls = lp_calls + persistent.stats().motion_checks;
  c.cc_calls = cc_calls + totals.config_checks + persistent.stats().config_checks;
  c.vertices = samples.points().size();
  std::uint64_t edges = 0;
  for (VertexId p : run.last.parent) edges += p != kNoVertex ? 1 : 0;
  c.edges = edges;
  run.samples = samples.points();
  run.trace.status = run.best_path ? RunStatus::Solved : RunStatus::NoSolution;
  return run;
}

}  // namespace lbt::fmt
