#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/cspace/collision.hpp"
#include "lbt/cspace/scenario.hpp"

namespace lbt::postprocess {

/// Sum of segment lengths; 0 for a single waypoint.
inline double path_cost(const cspace::SpaceDefinition& space, const cspace::Path& path) {
  if (path.empty()) throw std::invalid_argument("path_cost needs at least one waypoint");
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += cspace::distance(space, path[i - 1], path[i]);
  return total;
}

namespace detail {

// Position along a path: segment index plus the configuration there.
struct PathPoint {
  std::size_t segment;
  cspace::Configuration config;
};

inline PathPoint locate(const cspace::SpaceDefinition& space, const cspace::Path& path,
                        const std::vector<double>& cumulative, double s) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  std::size_t seg = it == cumulative.begin() ? 0 : static_cast<std::size_t>(it - cumulative.begin()) - 1;
  seg = std::min(seg, path.size() - 2);
  const double len = cumulative[seg + 1] - cumulative[seg];
  const double t = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
  return {seg, cspace::interpolate(space, path[seg], path[seg + 1], t)};
}

inline void drop_repeats(cspace::Path& path) {
  path.erase(std::unique(path.begin(), path.end()), path.end());
}

}  // namespace detail

/// Random shortcutting. Each round draws two arc-length-uniform positions,
/// and replaces the stretch between them with a straight motion when that
/// motion is collision-free and strictly shorter (by more than 1e-12).
inline cspace::Path shortcut(const cspace::Scenario& scenario, cspace::Path path, std::size_t iterations,
                             Rng& rng, double resolution, cspace::CollisionStats* stats = nullptr) {
  if (iterations == 0) return path;
  const auto& space = scenario.space;
  detail::drop_repeats(path);
  if (path.size() < 3) return path;

  std::vector<double> cumulative;
  for (std::size_t round = 0; round < iterations; ++round) {
    if (path.size() < 3) break;
    cumulative.assign(1, 0.0);
    for (std::size_t i = 1; i < path.size(); ++i) {
      cumulative.push_back(cumulative.back() + cspace::distance(space, path[i - 1], path[i]));
    }
    const double total = cumulative.back();
    double s1 = rng.uniform(0.0, total);
    double s2 = rng.uniform(0.0, total);
    if (s1 > s2) std::swap(s1, s2);
    auto a = detail::locate(space, path, cumulative, s1);
    auto b = detail::locate(space, path, cumulative, s2);
    if (a.segment == b.segment) continue;

    // Cost of the stretch being replaced: a -> end of a's segment ... -> b.
    const double old_cost = cumulative[b.segment] - cumulative[a.segment + 1] +
                            cspace::distance(space, a.config, path[a.segment + 1]) +
                            cspace::distance(space, path[b.segment], b.config);
    const double new_cost = cspace::distance(space, a.config, b.config);
    if (!(new_cost < old_cost - 1e-12)) continue;
    if (!cspace::collision_free_motion(scenario, a.config, b.config, resolution, stats)) continue;
    // A resolution-based checker may reject a piece of a segment it accepted
    // whole, so the two cut pieces are rechecked as well.
    if (!cspace::collision_free_motion(scenario, path[a.segment], a.config, resolution, stats) ||
        !cspace::collision_free_motion(scenario, b.config, path[b.segment + 1], resolution, stats)) {
      continue;
    }

    cspace::Path next;
    next.reserve(path.size());
    next.insert(next.end(), path.begin(), path.begin() + static_cast<std::ptrdiff_t>(a.segment) + 1);
    next.push_back(a.config);
    next.push_back(b.config);
    next.insert(next.end(), path.begin() + static_cast<std::ptrdiff_t>(b.segment) + 1, path.end());
    detail::drop_repeats(next);
    path = std::move(next);
  }
  return path;
}

}  // namespace lbt::postprocess
