#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/scenario.hpp"

namespace lbt::planners {

/// Monotonic clock returning seconds. Tests inject a deterministic one.
using Clock = std::function<double()>;

inline Clock steady_clock_from_now() {
  const auto t0 = std::chrono::steady_clock::now();
  return [t0] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
}

/// Stops at whichever limit is hit first; an empty condition never stops.
struct StopCondition {
  std::optional<std::uint64_t> max_iterations;
  std::optional<double> time_budget_s;
  bool first_solution = false;

  static StopCondition iterations(std::uint64_t n) { return {n, std::nullopt, false}; }
  static StopCondition seconds(double s) { return {std::nullopt, s, false}; }
};

struct PlannerParams {
  double eta = 1.0;          // steer step
  double goal_bias = 0.05;   // probability of drawing inside the goal region
  double epsilon = 0.0;      // approximation slack for the LBT variants
  StopCondition stop = StopCondition::iterations(1000);
  std::uint64_t seed = 0;
  double delta = 0.0;        // motion resolution; 0 selects 1% of the box diagonal

  [[nodiscard]] double resolution(const cspace::Scenario& s) const {
    return delta > 0.0 ? delta : 0.01 * s.space.diagonal();
  }

  void validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (!(goal_bias >= 0.0 && goal_bias < 1.0)) throw std::invalid_argument("goal bias must be in [0, 1)");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  }
};

struct Counters {
  std::uint64_t samples = 0;
  std::uint64_t lp_calls = 0;
  std::uint64_t cc_calls = 0;
  std::uint64_t delta_hat = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

struct TraceEvent {
  double elapsed_s = 0.0;
  std::uint64_t iteration = 0;
  Cost best_cost = kInfiniteCost;
};

enum class RunStatus { NotStarted, Running, Solved, NoSolution };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::NotStarted: return "not_started";
    case RunStatus::Running: return "running";
    case RunStatus::Solved: return "solved";
    case RunStatus::NoSolution: return "no_solution";
  }
  return "unknown";
}

/// Time-stamped best-cost history plus primitive-operation counters.
struct AnytimeTrace {
  std::vector<TraceEvent> events;
  Counters counters;
  RunStatus status = RunStatus::NotStarted;

  [[nodiscard]] Cost best_cost() const { return events.empty() ? kInfiniteCost : events.back().best_cost; }

  /// Appends an event when `cost` improves on the last one.
  void offer(double elapsed, std::uint64_t iteration, Cost cost) {
    if (cost < best_cost()) events.push_back({elapsed, iteration, cost});
  }
};

enum class EdgeStatus : std::uint8_t { Free, Blocked };

/// Local-planner results keyed by unordered vertex pair. Entries never change.
class EdgeCache {
 public:
  [[nodiscard]] std::optional<EdgeStatus> find(VertexId a, VertexId b) const {
    auto it = map_.find(key(a, b));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void record(VertexId a, VertexId b, EdgeStatus s) {
    auto [it, inserted] = map_.emplace(key(a, b), s);
    if (!inserted && it->second != s) throw std::logic_error("edge cache entry changed value");
  }

  [[nodiscard]] std::size_t size() const noexcept { return map_.size(); }

 private:
  static std::uint64_t key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  std::unordered_map<std::uint64_t, EdgeStatus> map_;
};

/// The local planner as the planners see it: collision_free_motion behind an
/// edge cache, with call counting. Pairs are always checked lower id first so
/// every planner gets the same answer for the same pair.
class LocalPlanner {
 public:
  LocalPlanner(const cspace::Scenario& scenario, double resolution)
      : scenario_(&scenario), resolution_(resolution) {}

  /// Check for a motion whose endpoint is not a vertex yet.
  bool check_motion(const cspace::Configuration& a, const cspace::Configuration& b) {
    return cspace::collision_free_motion(*scenario_, a, b, resolution_, &stats_);
  }

  /// Check for a pair of vertices, consulting and filling the cache.
  bool check(VertexId a, VertexId b, const cspace::Configuration& qa, const cspace::Configuration& qb) {
    if (auto hit = cache_.find(a, b)) return *hit == EdgeStatus::Free;
    const bool free = a < b ? check_motion(qa, qb) : check_motion(qb, qa);
    cache_.record(a, b, free ? EdgeStatus::Free : EdgeStatus::Blocked);
    return free;
  }

  void mark_free(VertexId a, VertexId b) { cache_.record(a, b, EdgeStatus::Free); }

  [[nodiscard]] const EdgeCache& cache() const noexcept { return cache_; }
  [[nodiscard]] const cspace::CollisionStats& stats() const noexcept { return stats_; }
  cspace::CollisionStats& stats() noexcept { return stats_; }
  [[nodiscard]] double resolution() const noexcept { return resolution_; }

 private:
  const cspace::Scenario* scenario_;
  double resolution_;
  cspace::CollisionStats stats_;
  EdgeCache cache_;
};

}  // namespace lbt::planners
