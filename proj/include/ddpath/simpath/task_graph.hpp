#pragma once

#include "ddpath/simpath/path.hpp"

#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ddpath::path {

/// Dependency graph over the tasks of a validated path: task b depends on
/// task a iff b consumes a's result.
class TaskGraph {
public:
  explicit TaskGraph(const ValidatedPath& path)
      : gateCount_(path.gateCount), dependencies_(path.tasks.size()),
        dependents_(path.tasks.size()) {
    for (std::size_t t = 0; t < path.tasks.size(); ++t) {
      for (const auto operand : {path.tasks[t].left, path.tasks[t].right}) {
        if (operand > gateCount_) {
          const auto producer = operand - gateCount_ - 1;
          dependencies_[t].push_back(producer);
          dependents_[producer].push_back(t);
        }
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept {
    return dependencies_.size();
  }
  [[nodiscard]] const std::vector<std::size_t>&
  dependencies(std::size_t task) const {
    return dependencies_.at(task);
  }
  [[nodiscard]] const std::vector<std::size_t>&
  dependents(std::size_t task) const {
    return dependents_.at(task);
  }
  /// Tasks that only consume the state or gates.
  [[nodiscard]] std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < size(); ++t) {
      if (dependencies_[t].empty()) {
        out.push_back(t);
      }
    }
    return out;
  }

  /// Kahn's algorithm; among ready tasks the lowest index runs first.
  [[nodiscard]] std::vector<std::size_t> topologicalOrder() const {
    std::vector<std::size_t> pending(size());
    std::priority_queue<std::size_t, std::vector<std::size_t>,
                        std::greater<>>
        ready;
    for (std::size_t t = 0; t < size(); ++t) {
      pending[t] = dependencies_[t].size();
      if (pending[t] == 0) {
        ready.push(t);
      }
    }
    std::vector<std::size_t> order;
    order.reserve(size());
    while (!ready.empty()) {
      const auto t = ready.top();
      ready.pop();
      order.push_back(t);
      for (const auto d : dependents_[t]) {
        if (--pending[d] == 0) {
          ready.push(d);
        }
      }
    }
    if (order.size() != size()) {
      throw std::logic_error("task graph has a cycle");
    }
    return order;
  }

private:
  std::size_t gateCount_;
  std::vector<std::vector<std::size_t>> dependencies_;
  std::vector<std::vector<std::size_t>> dependents_;
};

} // namespace ddpath::path
