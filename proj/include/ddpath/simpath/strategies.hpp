#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"
#include "ddpath/simpath/path.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace ddpath::path {

/// [(0,1), (|G|+1, 2), (|G|+2, 3), ...]: apply the gates one by one to the
/// state.
[[nodiscard]] inline SimulationPath sequentialPath(std::size_t gateCount) {
  if (gateCount == 0) {
    throw std::invalid_argument("a sequential path needs at least one gate");
  }
  SimulationPath path;
  path.tasks.emplace_back(0, 1);
  for (std::size_t k = 2; k <= gateCount; ++k) {
    path.tasks.emplace_back(gateCount + k - 1, k);
  }
  return path;
}

namespace detail {

/// Grows a single matrix operand outwards from the boundary between
/// positions `split` and `split + 1`. `moves[i]` is true for taking the next
/// gate to the left (towards position 1) and false for the next gate to the
/// right. Moves on an exhausted side are skipped; leftover gates are
/// appended afterwards and the state is multiplied last.
inline SimulationPath growFromSplit(std::size_t gateCount, std::size_t split,
                                    const std::vector<bool>& moves) {
  SimulationPath path;
  std::size_t nextLeft = split;      // next position on the left, 0 = none
  std::size_t nextRight = split + 1; // next position on the right
  std::optional<std::size_t> current;
  std::size_t nextResult = gateCount + 1;
  const auto take = [&](std::size_t position) {
    if (!current) {
      current = position;
      return;
    }
    path.tasks.emplace_back(*current, position);
    current = nextResult++;
  };
  const auto takeLeft = [&] {
    if (nextLeft == 0) {
      return;
    }
    take(nextLeft--);
  };
  const auto takeRight = [&] {
    if (nextRight > gateCount) {
      return;
    }
    take(nextRight++);
  };
  for (const bool left : moves) {
    left ? takeLeft() : takeRight();
  }
  while (nextRight <= gateCount) {
    takeRight();
  }
  while (nextLeft > 0) {
    takeLeft();
  }
  path.tasks.emplace_back(*current, 0);
  return path;
}

} // namespace detail

/// For G G'^-1 with |G| = gateCountG and |G'| = gateCountGPrime: start at
/// the boundary between both circuits and alternately take one gate from G
/// (leftwards) and one from G'^-1 (rightwards). The state is multiplied last.
[[nodiscard]] inline SimulationPath alternatingPath(std::size_t gateCountG,
                                                    std::size_t gateCountGPrime) {
  if (gateCountG == 0 || gateCountGPrime == 0) {
    throw std::invalid_argument(
        "an alternating path needs gates on both sides");
  }
  std::vector<bool> moves;
  for (std::size_t i = 0; i < std::max(gateCountG, gateCountGPrime); ++i) {
    moves.push_back(true);
    moves.push_back(false);
  }
  return detail::growFromSplit(gateCountG + gateCountGPrime, gateCountG,
                               moves);
}

/// Number of G'^-1 gates consumed after each gate of G, listed in G's gate
/// order. Gates of G are processed from the last one backwards; the counts
/// are clamped once G'^-1 is exhausted.
[[nodiscard]] inline std::vector<std::size_t>
heuristicSchedule(const qc::Circuit& g, std::size_t gateCountGPrime,
                  const std::map<qc::GateKind, std::size_t>& costs) {
  std::vector<std::size_t> schedule(g.size(), 0);
  std::size_t remaining = gateCountGPrime;
  for (std::size_t i = g.size(); i-- > 0;) {
    const auto it = costs.find(g[i].kind());
    if (it == costs.end()) {
      throw UnsupportedGateError("no decomposition cost for gate '" +
                                 g[i].name() + "'");
    }
    schedule[i] = std::min(it->second, remaining);
    remaining -= schedule[i];
  }
  return schedule;
}

/// Verification heuristic for G G'^-1: starting between both circuits, each
/// gate taken from G is followed by as many gates from G'^-1 as its
/// decomposition into G's native gate set would produce.
[[nodiscard]] inline SimulationPath
heuristicPath(const qc::Circuit& g, const qc::Circuit& gPrime,
              const std::map<qc::GateKind, std::size_t>& costs) {
  if (g.qubits() != gPrime.qubits()) {
    throw std::invalid_argument("circuits act on different numbers of qubits");
  }
  if (g.size() + gPrime.size() == 0) {
    throw std::invalid_argument("a heuristic path needs at least one gate");
  }
  const auto schedule = heuristicSchedule(g, gPrime.size(), costs);
  std::vector<bool> moves;
  for (std::size_t i = g.size(); i-- > 0;) {
    moves.push_back(true);
    moves.insert(moves.end(), schedule[i], false);
  }
  return detail::growFromSplit(g.size() + gPrime.size(), g.size(), moves);
}

/// Uniformly merges a random pair of neighbouring operands until one is
/// left. Always strictly valid; useful for path-independence checks.
[[nodiscard]] inline SimulationPath randomPath(std::size_t gateCount,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> operands(gateCount + 1);
  for (std::size_t i = 0; i <= gateCount; ++i) {
    operands[i] = i;
  }
  SimulationPath path;
  std::size_t nextResult = gateCount + 1;
  while (operands.size() > 1) {
    const auto i = std::uniform_int_distribution<std::size_t>(
        0, operands.size() - 2)(rng);
    path.tasks.emplace_back(operands[i], operands[i + 1]);
    operands[i] = nextResult++;
    operands.erase(operands.begin() + static_cast<long>(i) + 1);
  }
  return path;
}

} // namespace ddpath::path
