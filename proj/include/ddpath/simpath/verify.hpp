#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/circuit/generators.hpp"
#include "ddpath/circuit/transpile.hpp"
#include "ddpath/dd/package.hpp"
#include "ddpath/simpath/executor.hpp"
#include "ddpath/simpath/path.hpp"
#include "ddpath/simpath/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddpath::path {

/// |<phi| G G'^-1 |phi>| at or above this value counts as consistent.
inline constexpr double CONSISTENCY_THRESHOLD = 1. - 1e-9;

enum class Strategy { Sequential, Alternating, Heuristic };

[[nodiscard]] inline std::string toString(Strategy s) {
  switch (s) {
  case Strategy::Sequential:
    return "sequential";
  case Strategy::Alternating:
    return "alternating";
  case Strategy::Heuristic:
    return "heuristic";
  }
  return "?";
}

/// Path over G G'^-1 for one of the built-in strategies. The heuristic uses
/// the decomposition costs of G's gates into `gateset`.
[[nodiscard]] inline SimulationPath
verificationPath(Strategy strategy, const qc::Circuit& g,
                 const qc::Circuit& gPrime,
                 const qc::GateSet& gateset = qc::defaultGateSet()) {
  const std::size_t total = g.size() + gPrime.size();
  if (total == 0) {
    return {};
  }
  switch (strategy) {
  case Strategy::Sequential:
    return sequentialPath(total);
  case Strategy::Alternating:
    if (g.empty() || gPrime.empty()) {
      return sequentialPath(total);
    }
    return alternatingPath(g.size(), gPrime.size());
  case Strategy::Heuristic:
    return heuristicPath(g, gPrime, qc::costTable(g, gateset));
  }
  throw std::invalid_argument("unknown strategy");
}

/// Initial states for a verification run.
struct InitialStates {
  enum class Kind { Zero, Ghz, Basis };
  Kind kind = Kind::Zero;
  /// Number of basis states for Kind::Basis.
  std::size_t count = 1;

  /// Bit strings used for Kind::Basis: 0...0, 1...1, then pseudo-random
  /// strings from a fixed seed (duplicates skipped while possible).
  [[nodiscard]] std::vector<std::string> basisStrings(std::size_t n) const {
    std::vector<std::string> out{std::string(n, '0')};
    if (count > 1) {
      out.emplace_back(n, '1');
    }
    std::mt19937_64 rng(0xdd5eedULL);
    std::bernoulli_distribution coin(.5);
    const std::size_t distinct =
        n >= 63 ? count : std::min<std::size_t>(count, std::size_t{1} << n);
    while (out.size() < distinct) {
      std::string bits(n, '0');
      for (auto& b : bits) {
        b = coin(rng) ? '1' : '0';
      }
      if (std::find(out.begin(), out.end(), bits) == out.end()) {
        out.push_back(bits);
      }
    }
    out.resize(std::min(out.size(), distinct));
    return out;
  }
};

struct VerificationResult {
  bool consistent = false;
  /// Smallest |<phi| G G'^-1 |phi>| over all initial states.
  double fidelity = 0.;
  std::size_t gateCount = 0;
  std::vector<RunStats> runs;

  [[nodiscard]] std::size_t peakNodes() const {
    std::size_t peak = 0;
    for (const auto& r : runs) {
      peak = std::max(peak, r.peakNodes);
    }
    return peak;
  }
};

/// Simulates G G'^-1 along `path` on every initial state and compares the
/// result with the input, ignoring global phase.
[[nodiscard]] inline VerificationResult
verify(const qc::Circuit& g, const qc::Circuit& gPrime,
       const SimulationPath& path, dd::Package& pkg,
       const InitialStates& initial = {}, const ExecuteOptions& options = {}) {
  const auto combined = qc::concatInverse(g, gPrime);
  const auto validated = validate(path, combined);
  const std::size_t n = g.qubits();
  if (n == 0) {
    throw std::invalid_argument("circuits have no qubits");
  }
  std::vector<dd::vEdge> states;
  switch (initial.kind) {
  case InitialStates::Kind::Zero:
    states.push_back(pkg.makeZeroState(n));
    break;
  case InitialStates::Kind::Ghz: {
    const auto prep = qc::ghz(n);
    auto run = execute(prep, pkg.makeZeroState(n), sequentialPath(prep.size()),
                       pkg);
    states.push_back(run.state);
    break;
  }
  case InitialStates::Kind::Basis:
    for (const auto& bits : initial.basisStrings(n)) {
      states.push_back(pkg.makeBasisState(n, bits));
    }
    break;
  }
  for (const auto& s : states) {
    dd::Package::incRef(s);
  }
  VerificationResult result;
  result.gateCount = combined.size();
  result.fidelity = 1.;
  for (const auto& s : states) {
    const auto run = execute(combined, s, validated, pkg, options);
    const double overlap = std::abs(pkg.innerProduct(s, run.state));
    result.fidelity = std::min(result.fidelity, overlap);
    result.runs.push_back(run.stats);
  }
  for (const auto& s : states) {
    dd::Package::decRef(s);
  }
  result.consistent = result.fidelity >= CONSISTENCY_THRESHOLD;
  return result;
}

[[nodiscard]] inline VerificationResult
verify(const qc::Circuit& g, const qc::Circuit& gPrime, Strategy strategy,
       dd::Package& pkg, const InitialStates& initial = {},
       const ExecuteOptions& options = {}) {
  return verify(g, gPrime, verificationPath(strategy, g, gPrime), pkg, initial,
                options);
}

} // namespace ddpath::path
