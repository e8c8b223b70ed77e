#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lbt/core/types.hpp"

namespace lbt::planners {

/// Rooted tree over dense vertex ids with cost-to-come. Reparenting refreshes
/// the costs of the moved subtree depth-first.
class CostTree {
 public:
  void add_root(VertexId v) {
    grow(v);
    cost_[v] = 0.0;
    parent_[v] = kNoVertex;
    root_ = v;
  }

  void add_vertex(VertexId v, VertexId parent, Cost weight) {
    grow(v);
    attach(v, parent, weight);
    cost_[v] = cost_[parent] + weight;
  }

  void set_parent(VertexId v, VertexId parent, Cost weight) {
    if (v == root_) throw std::logic_error("cannot reparent the root");
    detach(v);
    attach(v, parent, weight);
    cost_[v] = cost_[parent] + weight;
    refresh_below(v);
  }

  [[nodiscard]] std::size_t size() const noexcept { return cost_.size(); }
  [[nodiscard]] VertexId root() const noexcept { return root_; }
  [[nodiscard]] Cost cost(VertexId v) const { return cost_.at(v); }
  [[nodiscard]] VertexId parent(VertexId v) const { return parent_.at(v); }
  [[nodiscard]] Cost weight(VertexId v) const { return weight_.at(v); }
  [[nodiscard]] const std::vector<VertexId>& children(VertexId v) const { return children_.at(v); }
  [[nodiscard]] const std::vector<VertexId>& parents() const noexcept { return parent_; }
  [[nodiscard]] const std::vector<Cost>& costs() const noexcept { return cost_; }

  /// Vertex ids from the root to v.
  [[nodiscard]] std::vector<VertexId> path_to(VertexId v) const {
    std::vector<VertexId> out;
    for (VertexId x = v; x != kNoVertex; x = parent_[x]) {
      out.push_back(x);
      if (out.size() > parent_.size()) throw std::logic_error("cycle in tree");
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  void grow(VertexId v) {
    if (v >= cost_.size()) {
      cost_.resize(v + 1, kInfiniteCost);
      parent_.resize(v + 1, kNoVertex);
      weight_.resize(v + 1, 0.0);
      children_.resize(v + 1);
    }
  }

  void attach(VertexId v, VertexId parent, Cost weight) {
    parent_[v] = parent;
    weight_[v] = weight;
    children_[parent].push_back(v);
  }

  void detach(VertexId v) {
    const VertexId p = parent_[v];
    if (p == kNoVertex) return;
    auto& siblings = children_[p];
    siblings.erase(std::find(siblings.begin(), siblings.end(), v));
  }

  void refresh_below(VertexId v) {
    stack_.assign(children_[v].begin(), children_[v].end());
    while (!stack_.empty()) {
      const VertexId c = stack_.back();
      stack_.pop_back();
      cost_[c] = cost_[parent_[c]] + weight_[c];
      stack_.insert(stack_.end(), children_[c].begin(), children_[c].end());
    }
  }

  std::vector<Cost> cost_;
  std::vector<VertexId> parent_;
  std::vector<Cost> weight_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> stack_;
  VertexId root_ = kNoVertex;
};

}  // namespace lbt::planners
