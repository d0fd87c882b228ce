#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddpath::path {

/// Ordered list of multiplication tasks. Index 0 is the initial state,
/// indices 1..|G| the gates in application order, and |G|+k the result of
/// the k-th task (1-based). Pairs are unordered; which operand acts as the
/// left factor is derived during validation.
struct SimulationPath {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;

  friend bool operator==(const SimulationPath&, const SimulationPath&) = default;
};

/// Positions of the original sequence covered by one operand: 0 is the
/// state, k the k-th gate. Sorted ascending.
using Positions = std::vector<std::size_t>;

/// A task after validation: `result = left * right`, where `right` covers
/// the earlier positions.
struct OrientedTask {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t result = 0;
  /// True if the right operand contains the state (matrix-vector product).
  bool matrixVector = false;
  /// True if the operands were only accepted through the commuting bypass.
  bool bypass = false;
};

/// Interval assignment of a valid path.
struct ValidatedPath {
  std::size_t gateCount = 0;
  std::vector<OrientedTask> tasks;
  /// Positions covered by every index 0 .. gateCount + tasks.size().
  std::vector<Positions> positions;

  [[nodiscard]] std::pair<std::size_t, std::size_t>
  interval(std::size_t index) const {
    const auto& pos = positions.at(index);
    return {pos.front(), pos.back()};
  }
};

namespace detail {

inline bool gatesDisjoint(std::size_t a, std::size_t b,
                          const qc::Circuit& circuit) {
  if (a == 0 || b == 0) {
    return false;
  }
  const auto sa = circuit[a - 1].support();
  const auto sb = circuit[b - 1].support();
  return std::none_of(sa.begin(), sa.end(), [&](auto q) {
    return std::find(sb.begin(), sb.end(), q) != sb.end();
  });
}

/// Whether the gate at `gap` can be moved out of the product over `merged`:
/// to its left (disjoint from every merged gate after it) or to its right
/// (disjoint from every merged gate before it; the state never commutes).
inline bool extractable(std::size_t gap, const Positions& merged,
                        const qc::Circuit& circuit) {
  bool left = true;
  bool right = true;
  for (const auto m : merged) {
    if (m > gap) {
      left = left && gatesDisjoint(gap, m, circuit);
    } else {
      right = right && gatesDisjoint(gap, m, circuit);
    }
  }
  return left || right;
}

/// Checks that `later * earlier` equals the ordered product over the union.
/// Without a circuit only strict adjacency (earlier.back() + 1 ==
/// later.front()) is accepted. With a circuit, the commuting bypass admits
/// interleaved operands whose out-of-order gate pairs have disjoint support,
/// provided every skipped gate can still be moved out of the product.
inline std::optional<std::string> checkOrder(const Positions& earlier,
                                             const Positions& later,
                                             const qc::Circuit* circuit,
                                             bool& bypass) {
  bypass = false;
  const bool adjacent = earlier.back() + 1 == later.front();
  if (circuit == nullptr) {
    if (adjacent) {
      return std::nullopt;
    }
    return "operands are not adjacent in the gate sequence";
  }
  if (later.front() == 0) {
    return "the state must be the right-most factor";
  }
  for (const auto l : later) {
    for (const auto e : earlier) {
      if (l < e && !gatesDisjoint(l, e, *circuit)) {
        return "gate " + std::to_string(l) + " would move past gate " +
               std::to_string(e) + " but they share a qubit";
      }
    }
  }
  bypass = !adjacent;
  Positions merged;
  std::merge(earlier.begin(), earlier.end(), later.begin(), later.end(),
             std::back_inserter(merged));
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    for (auto gap = merged[i] + 1; gap < merged[i + 1]; ++gap) {
      if (!extractable(gap, merged, *circuit)) {
        return "operands are not adjacent and skipped gate " +
               std::to_string(gap) + " shares qubits with gates on both sides";
      }
    }
  }
  return std::nullopt;
}

inline ValidatedPath validate(const SimulationPath& path, std::size_t gateCount,
                              const qc::Circuit* circuit) {
  if (circuit != nullptr && circuit->size() != gateCount) {
    throw std::invalid_argument("gate count does not match the circuit");
  }
  if (path.tasks.size() != gateCount) {
    throw ValidationError(ValidationError::npos,
                          "path has " + std::to_string(path.tasks.size()) +
                              " tasks, expected " + std::to_string(gateCount));
  }
  ValidatedPath out;
  out.gateCount = gateCount;
  out.positions.reserve(2 * gateCount + 1);
  for (std::size_t i = 0; i <= gateCount; ++i) {
    out.positions.push_back({i});
  }
  std::vector<bool> consumed(2 * gateCount + 1, false);
  for (std::size_t t = 0; t < path.tasks.size(); ++t) {
    const auto [a, b] = path.tasks[t];
    const std::size_t available = gateCount + 1 + t;
    for (const auto idx : {a, b}) {
      if (idx >= available) {
        throw ValidationError(t, "index " + std::to_string(idx) +
                                     " is not available yet");
      }
      if (consumed[idx]) {
        throw ValidationError(t, "index " + std::to_string(idx) +
                                     " was already consumed");
      }
    }
    if (a == b) {
      throw ValidationError(t, "index " + std::to_string(a) + " used twice");
    }
    const auto& pa = out.positions[a];
    const auto& pb = out.positions[b];
    // The operand holding the earliest position is the right factor; in the
    // interleaved case the other orientation is tried as well.
    auto right = pa.front() < pb.front() ? a : b;
    auto left = right == a ? b : a;
    bool bypass = false;
    auto problem =
        checkOrder(out.positions[right], out.positions[left], circuit, bypass);
    if (problem && out.positions[left].front() != 0 &&
        out.positions[right].front() != 0 && circuit != nullptr) {
      bool swappedBypass = false;
      if (!checkOrder(out.positions[left], out.positions[right], circuit,
                      swappedBypass)) {
        std::swap(left, right);
        bypass = swappedBypass;
        problem.reset();
      }
    }
    if (problem) {
      throw ValidationError(t, "cannot combine " + std::to_string(a) +
                                   " and " + std::to_string(b) + ": " +
                                   *problem);
    }
    Positions merged;
    std::merge(out.positions[left].begin(), out.positions[left].end(),
               out.positions[right].begin(), out.positions[right].end(),
               std::back_inserter(merged));
    consumed[a] = true;
    consumed[b] = true;
    OrientedTask task;
    task.left = left;
    task.right = right;
    task.result = available;
    task.matrixVector = out.positions[right].front() == 0;
    task.bypass = bypass;
    out.tasks.push_back(task);
    out.positions.push_back(std::move(merged));
  }
  return out;
}

} // namespace detail

/// Strict validation: every task must join two operands whose position
/// intervals are adjacent.
[[nodiscard]] inline ValidatedPath validate(const SimulationPath& path,
                                            std::size_t gateCount) {
  return detail::validate(path, gateCount, nullptr);
}

/// Validation against a concrete circuit. Additionally accepts non-adjacent
/// operands through the commuting bypass (see detail::checkOrder).
[[nodiscard]] inline ValidatedPath validate(const SimulationPath& path,
                                            const qc::Circuit& circuit) {
  return detail::validate(path, circuit.size(), &circuit);
}

} // namespace ddpath::path
