#include "ddpath/circuit/generators.hpp"
#include "ddpath/circuit/transpile.hpp"
#include "ddpath/oracle/dense.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace {

using namespace ddpath;
using qc::GateKind;
using qc::OpType;

/// Distance between two unitaries after removing the best global phase.
double phaseDistance(const oracle::DenseMatrix& a,
                     const oracle::DenseMatrix& b) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < b.entries.size(); ++i) {
    if (std::abs(b.entries[i]) > std::abs(b.entries[pivot])) {
      pivot = i;
    }
  }
  const auto phase = a.entries[pivot] / b.entries[pivot];
  double worst = std::abs(std::abs(phase) - 1.);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries[i] - phase * b.entries[i]));
  }
  return worst;
}

bool native(const qc::Circuit& c, const qc::GateSet& gs) {
  return std::all_of(c.gates().begin(), c.gates().end(),
                     [&](const auto& g) { return gs.contains(g.kind()); });
}

TEST(Transpile, QftGateCount) {
  const auto t = qc::transpile(qc::qft(3));
  EXPECT_EQ(t.size(), 21U);
  EXPECT_TRUE(native(t, qc::defaultGateSet()));
}

TEST(Transpile, IsAFixpointOnNativeCircuits) {
  const auto t = qc::transpile(qc::qft(5));
  EXPECT_EQ(qc::transpile(t), t);
}

TEST(Transpile, DecompositionCosts) {
  EXPECT_EQ(qc::decompositionCost({OpType::X, 1}), 1U);
  EXPECT_EQ(qc::decompositionCost({OpType::H, 0}), 1U);
  EXPECT_EQ(qc::decompositionCost({OpType::P, 0}), 1U);
  EXPECT_EQ(qc::decompositionCost({OpType::SWAP, 0}), 3U);
  EXPECT_EQ(qc::decompositionCost({OpType::P, 1}), 5U);
  EXPECT_EQ(qc::decompositionCost({OpType::Z, 1}), 5U);
  EXPECT_EQ(qc::decompositionCost({OpType::X, 0}), 3U);
  EXPECT_EQ(qc::decompositionCost({OpType::I, 0}), 0U);
}

TEST(Transpile, CostsSumToTranspiledSize) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = qc::randomCircuit(5, 30, seed);
    std::size_t total = 0;
    for (const auto& g : c.gates()) {
      total += qc::decompositionCost(g.kind());
    }
    EXPECT_EQ(total, qc::transpile(c).size()) << "seed " << seed;
  }
}

TEST(Transpile, PreservesSemanticsUpToGlobalPhase) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto c = qc::randomCircuit(n, 20, 100 * n + seed);
      const auto t = qc::transpile(c);
      EXPECT_TRUE(native(t, qc::defaultGateSet()));
      EXPECT_LT(phaseDistance(oracle::denseCircuitMatrix(c),
                              oracle::denseCircuitMatrix(t)),
                1e-10)
          << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(Transpile, EveryControlledKindIsExact) {
  using namespace qc;
  const std::vector<Gate> gates{
      makeGate(OpType::Y, {0}, {2}),  makeGate(OpType::H, {1}, {0}),
      makeGate(OpType::RY, {2}, {1}, {0.7, 0., 0.}),
      makeGate(OpType::RZ, {0}, {1}, {-1.3, 0., 0.}),
      makeGate(OpType::SX, {1}, {2}), makeGate(OpType::T, {2}, {0}),
      makeGate(OpType::U, {0}, {2}, {2.1, -0.4, 0.9}),
      makeGate(OpType::X, {2, 0}, {1}), makeGate(OpType::SWAP, {1}, {2, 0})};
  for (const auto& g : gates) {
    Circuit c(3);
    c.append(g);
    // controlled rules must be exact, not only up to a global phase
    const auto expected = oracle::denseCircuitMatrix(c);
    const auto actual = oracle::denseCircuitMatrix(transpile(c));
    const auto dim = expected.dim;
    double worst = 0.;
    const auto ref = actual(0, 0) / expected(0, 0);
    for (std::size_t i = 0; i < dim * dim; ++i) {
      worst = std::max(worst,
                       std::abs(actual.entries[i] - ref * expected.entries[i]));
    }
    EXPECT_LT(worst, 1e-10) << g.name();
  }
}

TEST(Transpile, MissingRuleIsUnsupported) {
  const qc::GateSet onlyH{GateKind{OpType::H, 0}};
  qc::Circuit c(2);
  c.cp(0.5, 0, 1);
  EXPECT_THROW((void)qc::transpile(c, onlyH), UnsupportedGateError);
  EXPECT_THROW((void)qc::decompositionCost({OpType::P, 1}, onlyH),
               UnsupportedGateError);
  qc::Circuit ccz(3);
  ccz.append(qc::makeGate(OpType::Z, {0, 1}, {2}));
  EXPECT_THROW((void)qc::transpile(ccz), UnsupportedGateError);
}

TEST(Transpile, CustomGateSet) {
  const qc::GateSet gs{GateKind{OpType::H, 0}, GateKind{OpType::P, 0},
                       GateKind{OpType::X, 1}, GateKind{OpType::SWAP, 0}};
  EXPECT_EQ(qc::transpile(qc::qft(3), gs).size(), 19U);
  EXPECT_EQ(qc::decompositionCost({OpType::SWAP, 0}, gs), 1U);
}

TEST(Transpile, CostTable) {
  const auto table = qc::costTable(qc::qft(3));
  ASSERT_EQ(table.size(), 3U);
  EXPECT_EQ(table.at(GateKind{OpType::H, 0}), 1U);
  EXPECT_EQ(table.at(GateKind{OpType::P, 1}), 5U);
  EXPECT_EQ(table.at(GateKind{OpType::SWAP, 0}), 3U);
}

} // namespace
