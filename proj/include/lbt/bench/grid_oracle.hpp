#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/scenario.hpp"

namespace lbt::bench {

struct GridOracleResult {
  double cost = kInfiniteCost;       // after string pulling
  double grid_cost = kInfiniteCost;  // raw octile path
  cspace::Path path;                 // pulled path, start first
  std::size_t cells_per_side = 0;
};

namespace detail {

inline bool segment_free(const cspace::Scenario& s, const cspace::Configuration& a, const cspace::Configuration& b,
                         double resolution) {
  return cspace::collision_free_motion(s, a, b, resolution);
}

// Greedy visibility shortcut: from each kept waypoint jump to the farthest
// later waypoint that is directly reachable.
inline cspace::Path string_pull(const cspace::Scenario& s, const cspace::Path& in, double resolution) {
  if (in.size() < 3) return in;
  cspace::Path out{in.front()};
  std::size_t i = 0;
  while (i + 1 < in.size()) {
    std::size_t j = in.size() - 1;
    while (j > i + 1 && !segment_free(s, in[i], in[j], resolution)) --j;
    out.push_back(in[j]);
    i = j;
  }
  return out;
}

inline double polyline_cost(const cspace::SpaceDefinition& space, const cspace::Path& p) {
  double c = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) c += cspace::distance(space, p[i - 1], p[i]);
  return c;
}

}  // namespace detail

/// Reference cost for planar point and disc robots: Dijkstra on an
/// 8-connected grid of cell centers over the workspace, followed by string
/// pulling and a final hop to the nearest point of the goal ball. `plugs`
/// are extra obstacles seen only by the oracle (used to close narrow passages
/// when measuring the detour through the wide ones).
inline GridOracleResult grid_oracle(cspace::Scenario scenario, std::size_t cells_per_side,
                                    const std::vector<cspace::Polygon>& plugs = {}) {
  const auto& space = scenario.space;
  if (space.dimension() != 2 || space.is_angular(0) || space.is_angular(1)) {
    throw std::invalid_argument("grid oracle needs a planar space");
  }
  if (std::holds_alternative<cspace::PolygonRobot>(scenario.robot)) {
    throw std::invalid_argument("grid oracle supports point and disc robots only");
  }
  if (cells_per_side < 2) throw std::invalid_argument("grid oracle needs at least 2 cells per side");
  for (const auto& p : plugs) scenario.obstacles.emplace_back(p);

  const std::size_t n = cells_per_side;
  const double x0 = space.bounds[0].lower, y0 = space.bounds[1].lower;
  const double dx = (space.bounds[0].upper - x0) / static_cast<double>(n);
  const double dy = (space.bounds[1].upper - y0) / static_cast<double>(n);
  const double resolution = 0.25 * std::min(dx, dy);
  auto center = [&](std::size_t i, std::size_t j) {
    return cspace::Configuration{x0 + (static_cast<double>(i) + 0.5) * dx, y0 + (static_cast<double>(j) + 0.5) * dy};
  };

  std::vector<char> free(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) free[j * n + i] = cspace::collision_free_config(scenario, center(i, j));
  }

  // Node n*n is the start configuration itself.
  const std::size_t start = n * n;
  std::vector<double> dist(n * n + 1, kInfiniteCost);
  std::vector<std::size_t> parent(n * n + 1, start);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[start] = 0.0;
  pq.push({0.0, start});

  auto config_of = [&](std::size_t node) {
    return node == start ? scenario.start : center(node % n, node / n);
  };
  const auto si = static_cast<long>(std::floor((scenario.start[0] - x0) / dx));
  const auto sj = static_cast<long>(std::floor((scenario.start[1] - y0) / dy));

  std::size_t goal = start;
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    const auto qu = config_of(u);
    if (cspace::in_goal(scenario, qu)) {
      goal = u;
      break;
    }
    const long ui = u == start ? si : static_cast<long>(u % n);
    const long uj = u == start ? sj : static_cast<long>(u / n);
    for (long oj = -1; oj <= 1; ++oj) {
      for (long oi = -1; oi <= 1; ++oi) {
        if (u != start && oi == 0 && oj == 0) continue;
        const long vi = ui + oi, vj = uj + oj;
        if (vi < 0 || vj < 0 || vi >= static_cast<long>(n) || vj >= static_cast<long>(n)) continue;
        const std::size_t v = static_cast<std::size_t>(vj) * n + static_cast<std::size_t>(vi);
        if (!free[v]) continue;
        const auto qv = center(static_cast<std::size_t>(vi), static_cast<std::size_t>(vj));
        const double w = cspace::distance(space, qu, qv);
        if (dist[u] + w >= dist[v]) continue;
        if (!detail::segment_free(scenario, qu, qv, resolution)) continue;
        dist[v] = dist[u] + w;
        parent[v] = u;
        pq.push({dist[v], v});
      }
    }
  }

  GridOracleResult out;
  out.cells_per_side = n;
  if (goal == start && !cspace::in_goal(scenario, scenario.start)) return out;
  out.grid_cost = dist[goal];
  cspace::Path raw;
  for (std::size_t v = goal; v != start; v = parent[v]) raw.push_back(config_of(v));
  raw.push_back(scenario.start);
  std::reverse(raw.begin(), raw.end());

  cspace::Path pulled = detail::string_pull(scenario, raw, resolution);
  // End on the goal ball boundary point nearest the previous waypoint.
  if (pulled.size() >= 2) {
    const auto& prev = pulled[pulled.size() - 2];
    const auto& c = scenario.goal.center;
    const double gap = cspace::distance(space, prev, c);
    if (gap > scenario.goal.radius) {
      const double t = 1.0 - scenario.goal.radius * (1.0 - 1e-9) / gap;
      const auto target = cspace::interpolate(space, prev, c, t);
      if (detail::segment_free(scenario, prev, target, resolution)) pulled.back() = target;
    }
    pulled = detail::string_pull(scenario, pulled, resolution);
  }
  out.path = std::move(pulled);
  out.cost = detail::polyline_cost(space, out.path);
  return out;
}

}  // namespace lbt::bench
