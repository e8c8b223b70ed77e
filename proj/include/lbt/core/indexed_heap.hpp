#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lbt/core/types.hpp"

namespace lbt {

/// Addressable binary min-heap over dense vertex ids. Entries are ordered by
/// (key, id) so equal keys pop in id order, which keeps runs deterministic.
template <typename Key, typename Less = std::less<Key>>
class IndexedHeap {
 public:
  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }

  [[nodiscard]] bool contains(VertexId id) const noexcept {
    return id < slot_.size() && slot_[id] != kAbsent;
  }

  [[nodiscard]] const Key& key(VertexId id) const { return heap_[slot_.at(id)].key; }

  [[nodiscard]] VertexId top() const {
    if (heap_.empty()) throw std::logic_error("top() on an empty heap");
    return heap_.front().id;
  }

  [[nodiscard]] const Key& top_key() const {
    if (heap_.empty()) throw std::logic_error("top_key() on an empty heap");
    return heap_.front().key;
  }

  /// Inserts id, or moves it to `key` when already present.
  void push_or_update(VertexId id, Key key) {
    if (contains(id)) {
      update(id, std::move(key));
      return;
    }
    if (id >= slot_.size()) slot_.resize(static_cast<std::size_t>(id) + 1, kAbsent);
    heap_.push_back({std::move(key), id});
    slot_[id] = heap_.size() - 1;
    sift_up(heap_.size() - 1);
  }

  /// Re-keys a present id in either direction.
  void update(VertexId id, Key key) {
    const std::size_t i = slot_.at(id);
    if (i == kAbsent) throw std::logic_error("update() of an id not in the heap");
    heap_[i].key = std::move(key);
    sift_up(i);
    sift_down(slot_[id]);
  }

  VertexId pop() {
    const VertexId id = top();
    erase(id);
    return id;
  }

  void erase(VertexId id) {
    if (!contains(id)) return;
    const std::size_t i = slot_[id];
    const std::size_t last = heap_.size() - 1;
    if (i != last) {
      swap_entries(i, last);
      heap_.pop_back();
      slot_[id] = kAbsent;
      const VertexId moved = heap_[i].id;
      sift_up(i);
      sift_down(slot_[moved]);
    } else {
      heap_.pop_back();
      slot_[id] = kAbsent;
    }
  }

  void clear() {
    for (const auto& e : heap_) slot_[e.id] = kAbsent;
    heap_.clear();
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  struct Entry {
    Key key;
    VertexId id;
  };

  bool before(const Entry& a, const Entry& b) const {
    if (less_(a.key, b.key)) return true;
    if (less_(b.key, a.key)) return false;
    return a.id < b.id;
  }

  void swap_entries(std::size_t i, std::size_t j) {
    std::swap(heap_[i], heap_[j]);
    slot_[heap_[i].id] = i;
    slot_[heap_[j].id] = j;
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!before(heap_[i], heap_[parent])) break;
      swap_entries(i, parent);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    while (true) {
      const std::size_t l = 2 * i + 1;
      const std::size_t r = l + 1;
      std::size_t m = i;
      if (l < n && before(heap_[l], heap_[m])) m = l;
      if (r < n && before(heap_[r], heap_[m])) m = r;
      if (m == i) return;
      swap_entries(i, m);
      i = m;
    }
  }

  std::vector<Entry> heap_;
  std::vector<std::size_t> slot_;
  Less less_{};
};

}  // namespace lbt
