#pragma once

#include "ddpath/dd/node.hpp"

#include <cstddef>
#include <deque>
#include <functional>
#include <unordered_set>

namespace ddpath::dd {

/// Hash-consing store: at most one live node per (level, successor edges).
/// Nodes are allocated from a pooled deque and recycled through a free list.
template <class NodeT> class UniqueTable {
public:
  UniqueTable() = default;
  UniqueTable(const UniqueTable&) = delete;
  UniqueTable& operator=(const UniqueTable&) = delete;

  /// Returns the canonical node equal to `candidate`, creating it if needed.
  /// Successor weights must already be interned.
  [[nodiscard]] NodeT* lookup(const NodeT& candidate) {
    NodeT probe = candidate;
    if (const auto it = table_.find(&probe); it != table_.end()) {
      return *it;
    }
    NodeT* node = allocate();
    node->e = candidate.e;
    node->level = candidate.level;
    node->ref = 0;
    node->mark = false;
    node->next = nullptr;
    table_.insert(node);
    return node;
  }

  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }

  /// Removes every node for which `keep` returns false. Returns the number
  /// of reclaimed nodes.
  template <class Pred> std::size_t sweep(Pred&& keep) {
    std::size_t reclaimed = 0;
    for (auto it = table_.begin(); it != table_.end();) {
      if (keep(**it)) {
        ++it;
        continue;
      }
      NodeT* node = *it;
      it = table_.erase(it);
      node->next = free_;
      node->level = -2;
      free_ = node;
      ++reclaimed;
    }
    return reclaimed;
  }

  template <class F> void forEach(F&& f) const {
    for (NodeT* node : table_) {
      f(*node);
    }
  }

private:
  struct Hash {
    std::size_t operator()(const NodeT* node) const noexcept {
      std::size_t h = std::hash<Level>{}(node->level);
      for (const auto& edge : node->e) {
        h = detail::combine(h, hashEdge(edge));
      }
      return h;
    }
  };
  struct Equal {
    bool operator()(const NodeT* a, const NodeT* b) const noexcept {
      return a->level == b->level && a->e == b->e;
    }
  };

  NodeT* allocate() {
    if (free_ != nullptr) {
      NodeT* node = free_;
      free_ = node->next;
      return node;
    }
    return &storage_.emplace_back();
  }

  std::unordered_set<NodeT*, Hash, Equal> table_;
  std::deque<NodeT> storage_;
  NodeT* free_ = nullptr;
};

} // namespace ddpath::dd
