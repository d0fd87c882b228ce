#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/dd/package.hpp"
#include "ddpath/simpath/path.hpp"
#include "ddpath/simpath/task_graph.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ddpath::path {

/// An operand or intermediate result: a state DD or an operator DD.
using Operand = std::variant<dd::vEdge, dd::mEdge>;

struct TaskStats {
  std::size_t taskIndex = 0;
  std::size_t resultNodes = 0;
  std::int64_t elapsedNs = 0;
};

struct RunStats {
  std::vector<TaskStats> tasks;
  /// Largest node count among all task inputs and results.
  std::size_t peakNodes = 0;
  std::size_t finalNodes = 0;
  std::size_t taskCount = 0;
  std::int64_t elapsedNs = 0;
};

struct RunResult {
  /// Final state. Not reference counted: pass it as a root to
  /// Package::garbageCollect or incRef it to keep it alive.
  dd::vEdge state;
  RunStats stats;
};

struct ExecuteOptions {
  /// Live-node count above which intermediate garbage is collected.
  std::size_t gcThreshold = std::size_t{1} << 18U;
  /// Called after every task with its oriented description and result.
  std::function<void(std::size_t, const OrientedTask&, const Operand&)>
      observer;
};

[[nodiscard]] inline std::size_t nodeCount(const Operand& op) {
  return std::visit([](const auto& e) { return dd::Package::nodeCount(e); },
                    op);
}

/// Runs a validated path: tasks execute in topological order on one kernel
/// instance; gate DDs are built when first needed and every intermediate is
/// released as soon as it has been consumed.
[[nodiscard]] inline RunResult execute(const qc::Circuit& c,
                                       const dd::vEdge& initial,
                                       const ValidatedPath& path,
                                       dd::Package& pkg,
                                       const ExecuteOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::size_t gateCount = c.size();
  if (path.gateCount != gateCount) {
    throw std::invalid_argument("path was validated for a different circuit");
  }
  if (!initial.isZero() &&
      static_cast<std::size_t>(initial.level() + 1) != c.qubits()) {
    throw std::invalid_argument("initial state does not match the circuit's "
                                "qubit count");
  }

  RunStats stats;
  std::vector<std::optional<Operand>> live(gateCount + path.tasks.size() + 1);
  live[0] = initial;
  dd::Package::incRef(initial);
  // held until the end so the caller's handle survives in-run collections
  dd::Package::incRef(initial);
  stats.peakNodes = dd::Package::nodeCount(initial);

  const auto fetch = [&](std::size_t index) -> Operand {
    if (!live[index]) {
      if (index == 0 || index > gateCount) {
        throw std::logic_error("operand " + std::to_string(index) +
                               " is not available");
      }
      const auto gate = pkg.makeGateDD(c[index - 1], c.qubits());
      dd::Package::incRef(gate);
      stats.peakNodes = std::max(stats.peakNodes, dd::Package::nodeCount(gate));
      live[index] = gate;
    }
    return *live[index];
  };
  const auto release = [&](std::size_t index) {
    std::visit([](const auto& e) { dd::Package::decRef(e); }, *live[index]);
    live[index].reset();
  };

  std::size_t gcThreshold = options.gcThreshold;
  const TaskGraph graph(path);
  for (const auto t : graph.topologicalOrder()) {
    const auto taskStart = Clock::now();
    const auto& task = path.tasks[t];
    const Operand left = fetch(task.left);
    const Operand right = fetch(task.right);
    Operand result;
    if (const auto* m = std::get_if<dd::mEdge>(&left)) {
      if (const auto* v = std::get_if<dd::vEdge>(&right)) {
        result = pkg.multiply(*m, *v);
      } else {
        result = pkg.multiply(*m, std::get<dd::mEdge>(right));
      }
    } else {
      throw std::logic_error("task " + std::to_string(t) +
                             ": left factor is a state vector");
    }
    std::visit([](const auto& e) { dd::Package::incRef(e); }, result);
    release(task.left);
    release(task.right);
    live[task.result] = result;

    const auto nodes = nodeCount(result);
    stats.peakNodes = std::max(stats.peakNodes, nodes);
    stats.tasks.push_back(
        {t, nodes,
         std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              taskStart)
             .count()});
    if (options.observer) {
      options.observer(t, task, result);
    }
    if (pkg.liveNodeCount() > gcThreshold) {
      pkg.garbageCollect();
      gcThreshold = std::max(gcThreshold, 2 * pkg.liveNodeCount());
    }
  }

  const std::size_t finalIndex = gateCount + path.tasks.size();
  const auto finalState = std::get<dd::vEdge>(*live[finalIndex]);
  release(finalIndex);
  dd::Package::decRef(initial);
  stats.taskCount = path.tasks.size();
  stats.finalNodes = dd::Package::nodeCount(finalState);
  stats.elapsedNs =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count();
  return {finalState, std::move(stats)};
}

/// Validates `path` against `c` (including the commuting bypass) and runs it.
[[nodiscard]] inline RunResult execute(const qc::Circuit& c,
                                       const dd::vEdge& initial,
                                       const SimulationPath& path,
                                       dd::Package& pkg,
                                       const ExecuteOptions& options = {}) {
  return execute(c, initial, validate(path, c), pkg, options);
}

} // namespace ddpath::path
