#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "lbt/core/indexed_heap.hpp"
#include "lbt/core/types.hpp"
#include "lbt/dynsp/dynamic_graph.hpp"

namespace lbt::dynsp {

/// Fully dynamic single-source shortest paths over a DynamicGraph it owns.
///
/// Insertions propagate decreases with a Dijkstra sweep seeded at the head of
/// the new edge. Deleting a shortest-path-tree edge first collects the subtree
/// below it, reseeds each member from its best surviving predecessor outside
/// the subtree, then settles the subtree with a Dijkstra sweep restricted to
/// it. Deleting a non-tree edge touches nothing.
///
/// Both mutations return exactly the vertices whose cost changed, in the order
/// they were settled (nondecreasing new cost).
class DynamicSssp {
 public:
  explicit DynamicSssp(VertexId source = 0) : source_(source) {}

  VertexId add_vertex() {
    const VertexId id = graph_.add_vertex();
    cost_.push_back(id == source_ ? 0.0 : kInfiniteCost);
    parent_.push_back(kNoVertex);
    mark_.push_back(0);
    return id;
  }

  void ensure_vertices(std::size_t n) {
    while (graph_.vertex_count() < n) add_vertex();
  }

  [[nodiscard]] const DynamicGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] VertexId source() const noexcept { return source_; }
  [[nodiscard]] Cost cost(VertexId x) const { return cost_.at(x); }
  [[nodiscard]] VertexId parent(VertexId x) const { return parent_.at(x); }
  [[nodiscard]] const std::vector<Cost>& costs() const noexcept { return cost_; }

  /// Largest affected set returned by any mutation so far.
  [[nodiscard]] std::size_t max_affected() const noexcept { return max_affected_; }

  std::vector<VertexId> insert_edge(VertexId u, VertexId v, Cost w) {
    graph_.insert_edge(u, v, w);
    std::vector<VertexId> changed;
    const Cost candidate = cost_[u] + w;
    if (!(candidate < cost_[v])) return changed;
    cost_[v] = candidate;
    parent_[v] = u;
    heap_.push_or_update(v, candidate);
    while (!heap_.empty()) {
      const VertexId x = heap_.pop();
      changed.push_back(x);
      for (const Arc& a : graph_.out_arcs(x)) {
        const Cost c = cost_[x] + a.weight;
        if (c < cost_[a.vertex]) {
          cost_[a.vertex] = c;
          parent_[a.vertex] = x;
          heap_.push_or_update(a.vertex, c);
        }
      }
    }
    note_affected(changed.size());
    return changed;
  }

  std::vector<VertexId> delete_edge(VertexId u, VertexId v) {
    graph_.remove_edge(u, v);
    std::vector<VertexId> changed;
    if (parent_[v] != u) return changed;

    // Subtree of v in the shortest-path tree; all of it may lose its path.
    std::vector<VertexId> region{v};
    mark_[v] = 1;
    for (std::size_t i = 0; i < region.size(); ++i) {
      const VertexId x = region[i];
      for (const Arc& a : graph_.out_arcs(x)) {
        if (!mark_[a.vertex] && parent_[a.vertex] == x) {
          mark_[a.vertex] = 1;
          region.push_back(a.vertex);
        }
      }
    }

    old_cost_.resize(region.size());
    for (std::size_t i = 0; i < region.size(); ++i) {
      const VertexId y = region[i];
      old_cost_[i] = cost_[y];
      Cost best = kInfiniteCost;
      VertexId best_parent = kNoVertex;
      for (const Arc& a : graph_.in_arcs(y)) {
        if (mark_[a.vertex]) continue;
        const Cost c = cost_[a.vertex] + a.weight;
        if (c < best || (c == best && best_parent != kNoVertex && a.vertex < best_parent)) {
          best = c;
          best_parent = a.vertex;
        }
      }
      cost_[y] = best;
      parent_[y] = best < kInfiniteCost ? best_parent : kNoVertex;
      if (best < kInfiniteCost) heap_.push_or_update(y, best);
    }

    while (!heap_.empty()) {
      const VertexId x = heap_.pop();
      for (const Arc& a : graph_.out_arcs(x)) {
        if (!mark_[a.vertex]) continue;
        const Cost c = cost_[x] + a.weight;
        if (c < cost_[a.vertex]) {
          cost_[a.vertex] = c;
          parent_[a.vertex] = x;
          heap_.push_or_update(a.vertex, c);
        }
      }
    }

    for (std::size_t i = 0; i < region.size(); ++i) {
      mark_[region[i]] = 0;
      if (cost_[region[i]] != old_cost_[i]) changed.push_back(region[i]);
    }
    std::stable_sort(changed.begin(), changed.end(),
                     [this](VertexId a, VertexId b) { return cost_[a] < cost_[b]; });
    note_affected(changed.size());
    return changed;
  }

  /// One "id cost parent" line per vertex; parent is -1 when absent.
  [[nodiscard]] std::string dump() const {
    std::ostringstream out;
    out.precision(17);
    for (VertexId x = 0; x < cost_.size(); ++x) {
      out << x << ' ' << cost_[x] << ' ';
      if (parent_[x] == kNoVertex) {
        out << -1;
      } else {
        out << parent_[x];
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  void note_affected(std::size_t n) { max_affected_ = std::max(max_affected_, n); }

  VertexId source_;
  DynamicGraph graph_;
  std::vector<Cost> cost_;
  std::vector<VertexId> parent_;
  std::vector<char> mark_;
  std::vector<Cost> old_cost_;
  IndexedHeap<Cost> heap_;
  std::size_t max_affected_ = 0;
};

}  // namespace lbt::dynsp
