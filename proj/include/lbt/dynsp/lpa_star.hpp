#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lbt/core/indexed_heap.hpp"
#include "lbt/core/types.hpp"
#include "lbt/dynsp/dynamic_graph.hpp"

namespace lbt::dynsp {

/// Lifelong Planning A* from one source to a goal set, over a DynamicGraph it
/// owns. The goal set is folded into a virtual sink fed by zero-weight arcs
/// from every goal vertex; the sink lives outside the heap.
///
/// Mutations only update rhs values and queue keys. shortest_path() does the
/// search; afterwards cost() and parent() along the reported path are reads.
/// Edge weights must be strictly positive: with zero-weight cycles a vertex
/// can stay locally consistent through a parent that depends on it.
class LpaStar {
 public:
  using Key = std::pair<Cost, Cost>;

  explicit LpaStar(VertexId source = 0) : source_(source) {}

  /// Adds a vertex with its goal membership and heuristic (admissible and
  /// consistent toward the goal set).
  VertexId add_vertex(bool is_goal, Cost heuristic) {
    const VertexId id = graph_.add_vertex();
    g_.push_back(kInfiniteCost);
    rhs_.push_back(kInfiniteCost);
    rhs_parent_.push_back(kNoVertex);
    h_.push_back(heuristic);
    goal_.push_back(is_goal ? 1 : 0);
    on_path_.push_back(0);
    if (is_goal) goals_.push_back(id);
    if (id == source_) {
      rhs_[id] = 0.0;
      heap_.push_or_update(id, key(id));
      dirty_ = true;
    }
    return id;
  }

  [[nodiscard]] const DynamicGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] VertexId source() const noexcept { return source_; }
  [[nodiscard]] Cost heuristic(VertexId v) const { return h_.at(v); }
  [[nodiscard]] bool is_goal(VertexId v) const { return goal_.at(v) != 0; }
  [[nodiscard]] Cost g(VertexId v) const { return g_.at(v); }
  [[nodiscard]] Cost rhs(VertexId v) const { return rhs_.at(v); }

  void insert_edge(VertexId u, VertexId v, Cost w) {
    if (!(w > 0.0)) throw std::invalid_argument("LPA* edge weights must be positive");
    graph_.insert_edge(u, v, w);
    dirty_ = true;
    relax(u, v, w);
  }

  void delete_edge(VertexId u, VertexId v) {
    graph_.remove_edge(u, v);
    dirty_ = true;
    if (rhs_parent_[v] == u) update_vertex(v);
  }

  /// Settles the queue until the cheapest goal vertex is locally consistent.
  /// Returns that vertex, or kNoVertex when the goal set is unreachable.
  VertexId shortest_path() {
    for (VertexId v : path_) on_path_[v] = 0;
    path_.clear();
    while (true) {
      const Key sink_key{std::min(sink_g_, sink_rhs_), std::min(sink_g_, sink_rhs_)};
      const bool expand_heap = !heap_.empty() && not_after(heap_.top_key(), sink_key);
      if (!expand_heap) {
        if (sink_g_ == sink_rhs_) break;
        sink_g_ = sink_g_ > sink_rhs_ ? sink_rhs_ : kInfiniteCost;
        continue;
      }
      const VertexId u = heap_.pop();
      ++expansions_;
      if (g_[u] > rhs_[u]) {
        g_[u] = rhs_[u];
        if (goal_[u]) sink_decreased(u);
        for (const Arc& a : graph_.out_arcs(u)) relax(u, a.vertex, a.weight);
      } else {
        g_[u] = kInfiniteCost;
        update_vertex(u);
        if (goal_[u] && sink_parent_ == u) sink_rescan();
        for (const Arc& a : graph_.out_arcs(u)) {
          if (rhs_parent_[a.vertex] == u) update_vertex(a.vertex);
        }
      }
    }
    dirty_ = false;
    goal_vertex_ = sink_g_ < kInfiniteCost ? sink_parent_ : kNoVertex;
    if (goal_vertex_ != kNoVertex) {
      VertexId x = goal_vertex_;
      for (std::size_t steps = 0; steps <= g_.size(); ++steps) {
        on_path_[x] = 1;
        path_.push_back(x);
        if (x == source_) break;
        x = rhs_parent_[x];
        if (x == kNoVertex) throw std::logic_error("LPA* path does not reach the source");
      }
    }
    return goal_vertex_;
  }

  /// Cost of the cheapest goal vertex found by the last shortest_path().
  [[nodiscard]] Cost cost() const {
    require_fresh();
    return sink_g_;
  }

  [[nodiscard]] VertexId goal_vertex() const {
    require_fresh();
    return goal_vertex_;
  }

  /// Predecessor of x on the reported shortest path.
  [[nodiscard]] VertexId parent(VertexId x) const {
    require_fresh();
    if (x >= on_path_.size() || !on_path_[x]) {
      throw std::logic_error("parent() queried off the reported shortest path");
    }
    return rhs_parent_[x];
  }

  /// Reported path from the source to the goal vertex (empty if none).
  [[nodiscard]] std::vector<VertexId> path() const {
    require_fresh();
    return {path_.rbegin(), path_.rend()};
  }

  [[nodiscard]] std::size_t expansions() const noexcept { return expansions_; }

 private:
  Key key(VertexId v) const {
    const Cost m = std::min(g_[v], rhs_[v]);
    return {m + h_[v], m};
  }

  // Heap key not ordered after the sink key. A relative slack on the primary
  // component stops rounding in g + h from ending the search early.
  static bool not_after(const Key& a, const Key& sink) {
    if (sink.first == kInfiniteCost) return true;
    return a.first <= sink.first + 1e-12 * std::abs(sink.first);
  }

  void require_fresh() const {
    if (dirty_) throw std::logic_error("graph changed since the last shortest_path()");
  }

  // rhs(v) is kept equal to the best in-arc value at all times, so a single
  // improved arc only needs a comparison. Ties go to the smaller parent id,
  // matching the full rescan in update_vertex.
  void relax(VertexId u, VertexId v, Cost w) {
    if (v == source_) return;
    const Cost c = g_[u] + w;
    if (!(c < kInfiniteCost)) return;
    if (c < rhs_[v] || (c == rhs_[v] && u < rhs_parent_[v])) {
      rhs_[v] = c;
      rhs_parent_[v] = u;
      enqueue(v);
    }
  }

  void enqueue(VertexId v) {
    if (g_[v] != rhs_[v]) {
      heap_.push_or_update(v, key(v));
    } else {
      heap_.erase(v);
    }
  }

  void update_vertex(VertexId v) {
    if (v != source_) {
      Cost best = kInfiniteCost;
      VertexId best_parent = kNoVertex;
      for (const Arc& a : graph_.in_arcs(v)) {
        const Cost c = g_[a.vertex] + a.weight;
        if (c < best || (c == best && c < kInfiniteCost && a.vertex < best_parent)) {
          best = c;
          best_parent = a.vertex;
        }
      }
      rhs_[v] = best;
      rhs_parent_[v] = best_parent;
    }
    enqueue(v);
  }

  void sink_decreased(VertexId goal) {
    if (g_[goal] < sink_rhs_ || (g_[goal] == sink_rhs_ && goal < sink_parent_)) {
      sink_rhs_ = g_[goal];
      sink_parent_ = goal;
    }
  }

  void sink_rescan() {
    sink_rhs_ = kInfiniteCost;
    sink_parent_ = kNoVertex;
    for (VertexId v : goals_) {
      if (g_[v] < kInfiniteCost) sink_decreased(v);
    }
  }

  VertexId source_;
  DynamicGraph graph_;
  std::vector<Cost> g_;
  std::vector<Cost> rhs_;
  std::vector<VertexId> rhs_parent_;
  std::vector<Cost> h_;
  std::vector<char> goal_;
  std::vector<VertexId> goals_;
  IndexedHeap<Key> heap_;

  Cost sink_g_ = kInfiniteCost;
  Cost sink_rhs_ = kInfiniteCost;
  VertexId sink_parent_ = kNoVertex;

  std::vector<char> on_path_;
  std::vector<VertexId> path_;
  VertexId goal_vertex_ = kNoVertex;
  bool dirty_ = true;
  std::size_t expansions_ = 0;
};

}  // namespace lbt::dynsp
