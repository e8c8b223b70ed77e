#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lbt/core/types.hpp"
#include "lbt/cspace/space.hpp"

namespace lbt::nn {

/// k_RRG = 2e, valid for every problem instance.
inline constexpr double kRrgConstant = 2.0 * 2.71828182845904523536;

/// Number of neighbors an RRG-style planner connects a new vertex to when the
/// roadmap holds n vertices: ceil(2e ln n), at least 1.
inline std::size_t rrg_neighbor_count(std::size_t n) {
  if (n <= 1) return 1;
  const double k = std::ceil(kRrgConstant * std::log(static_cast<double>(n)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

/// Append-only vertex store with exact nearest-neighbor queries. Results are
/// those of a linear scan ordered by (distance, id).
///
/// Points also go into an unbalanced kd-tree split on the Euclidean
/// coordinates only. A Euclidean coordinate difference never exceeds the
/// metric, so pruning on it (with a small rounding allowance) cannot drop a
/// point the linear scan would return. Spaces without a Euclidean coordinate
/// fall back to the scan.
class NeighborIndex {
 public:
  explicit NeighborIndex(const cspace::SpaceDefinition& space) : space_(&space) {
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      if (!space.is_angular(i)) axes_.push_back(i);
    }
  }

  VertexId insert(const cspace::Configuration& q) {
    cspace::require_same_dimension(*space_, q);
    const auto id = static_cast<VertexId>(points_.size());
    points_.push_back(q);
    nodes_.push_back({});
    if (!axes_.empty() && id > 0) {
      VertexId at = 0;
      while (true) {
        Node& n = nodes_[at];
        const bool left = q[axes_[n.axis]] < points_[at][axes_[n.axis]];
        VertexId& child = left ? n.left : n.right;
        if (child == kNoVertex) {
          child = id;
          nodes_[id].axis = (n.axis + 1) % axes_.size();
          break;
        }
        at = child;
      }
    }
    return id;
  }

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
  [[nodiscard]] const cspace::Configuration& at(VertexId id) const { return points_.at(id); }
  [[nodiscard]] const std::vector<cspace::Configuration>& points() const noexcept { return points_; }
  [[nodiscard]] const cspace::SpaceDefinition& space() const noexcept { return *space_; }

  [[nodiscard]] VertexId nearest(const cspace::Configuration& q) const {
    if (points_.empty()) throw std::logic_error("nearest() on an empty index");
    const auto best = k_nearest(q, 1);
    return best.front();
  }

  /// min(k, |V|) ids (minus `exclude`) by nondecreasing distance, ties by id.
  [[nodiscard]] std::vector<VertexId> k_nearest(const cspace::Configuration& q, std::size_t k,
                                                VertexId exclude = kNoVertex) const {
    if (k == 0) return {};
    if (points_.empty()) throw std::logic_error("k_nearest() on an empty index");
    cspace::require_same_dimension(*space_, q);
    // Max-heap on (distance, id) holding the best k seen so far.
    std::vector<Hit> best;
    auto offer = [&](VertexId id) {
      if (id == exclude) return;
      const Hit h{cspace::distance(*space_, q, points_[id]), id};
      if (best.size() < k) {
        best.push_back(h);
        std::push_heap(best.begin(), best.end());
      } else if (h < best.front()) {
        std::pop_heap(best.begin(), best.end());
        best.back() = h;
        std::push_heap(best.begin(), best.end());
      }
    };
    auto bound = [&] { return best.size() < k ? kInfiniteCost : best.front().first; };
    visit(q, offer, bound);
    std::sort_heap(best.begin(), best.end());
    std::vector<VertexId> out(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) out[i] = best[i].second;
    return out;
  }

  /// Every id (minus `exclude`) within distance r, by (distance, id).
  [[nodiscard]] std::vector<VertexId> radius_near(const cspace::Configuration& q, double r,
                                                  VertexId exclude = kNoVertex) const {
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    if (points_.empty()) return {};
    cspace::require_same_dimension(*space_, q);
    std::vector<Hit> hits;
    auto offer = [&](VertexId id) {
      if (id == exclude) return;
      const double d = cspace::distance(*space_, q, points_[id]);
      if (d <= r) hits.emplace_back(d, id);
    };
    visit(q, offer, [r] { return r; });
    std::sort(hits.begin(), hits.end());
    std::vector<VertexId> out(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) out[i] = hits[i].second;
    return out;
  }

 private:
  using Hit = std::pair<double, VertexId>;

  struct Node {
    VertexId left = kNoVertex;
    VertexId right = kNoVertex;
    std::size_t axis = 0;
  };

  // Calls offer(id) on every point that could lie within bound() of q;
  // bound() may shrink as points are offered.
  template <class Offer, class Bound>
  void visit(const cspace::Configuration& q, Offer&& offer, Bound&& bound) const {
    if (axes_.empty()) {
      for (VertexId id = 0; id < points_.size(); ++id) offer(id);
      return;
    }
    // Stack entries carry the axis gap that must fit within the bound.
    std::vector<std::pair<VertexId, double>> stack{{0, 0.0}};
    while (!stack.empty()) {
      const auto [at, gap] = stack.back();
      stack.pop_back();
      if (gap > reach(bound())) continue;
      offer(at);
      const Node& n = nodes_[at];
      const double diff = q[axes_[n.axis]] - points_[at][axes_[n.axis]];
      const VertexId near = diff < 0.0 ? n.left : n.right;
      const VertexId far = diff < 0.0 ? n.right : n.left;
      if (far != kNoVertex) stack.push_back({far, std::abs(diff)});
      if (near != kNoVertex) stack.push_back({near, 0.0});
    }
  }

  // Widened bound absorbs rounding in the metric only.
  static double reach(double r) { return r + 1e-9 * (1.0 + r); }

  const cspace::SpaceDefinition* space_;
  std::vector<std::size_t> axes_;
  std::vector<cspace::Configuration> points_;
  std::vector<Node> nodes_;
};

}  // namespace lbt::nn
