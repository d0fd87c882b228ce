#include "ddpath/circuit/circuit.hpp"
#include "ddpath/circuit/generators.hpp"
#include "ddpath/oracle/dense.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

namespace {

using namespace ddpath;
using qc::OpType;

constexpr double TOL = 1e-10;

TEST(Circuit, AppendValidatesOperands) {
  qc::Circuit c(3);
  EXPECT_THROW(c.append(qc::cx(0, 3)), std::invalid_argument);
  EXPECT_THROW(c.append(qc::cx(1, 1)), std::invalid_argument);
  EXPECT_THROW(c.append(qc::makeGate(OpType::SWAP, {}, {0})),
               std::invalid_argument);
  EXPECT_THROW(c.append(qc::makeGate(OpType::SWAP, {0}, {0, 1})),
               std::invalid_argument);
  c.append(qc::swap(0, 2));
  EXPECT_EQ(c.size(), 1U);
}

TEST(Circuit, GateKindNames) {
  EXPECT_EQ(qc::cx(0, 1).name(), "cx");
  EXPECT_EQ(qc::makeGate(OpType::X, {0, 1}, {2}).name(), "ccx");
  EXPECT_EQ(qc::cp(1., 0, 1).name(), "cp");
  EXPECT_EQ(qc::swap(0, 1).name(), "swap");
  EXPECT_EQ(qc::cz(0, 1).kind(), (qc::GateKind{OpType::Z, 1}));
}

TEST(Circuit, InverseOfSingleGates) {
  EXPECT_EQ(qc::inverse(qc::s(0)).op, OpType::Sdg);
  EXPECT_EQ(qc::inverse(qc::tdg(0)).op, OpType::T);
  EXPECT_EQ(qc::inverse(qc::sx(0)).op, OpType::SXdg);
  EXPECT_EQ(qc::inverse(qc::h(0)), qc::h(0));
  EXPECT_EQ(qc::inverse(qc::cp(0.5, 0, 1)).params[0], -0.5);
}

TEST(Circuit, InvertIsAnInvolution) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = qc::randomCircuit(4, 30, seed);
    EXPECT_EQ(qc::invert(qc::invert(c)), c);
  }
  qc::Circuit single(1);
  single.h(0);
  EXPECT_EQ(qc::invert(single), single);
}

TEST(Circuit, InvertIsASemanticInverse) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = qc::randomCircuit(4, 25, seed);
    const auto product = oracle::multiply(
        oracle::denseCircuitMatrix(qc::invert(c)), oracle::denseCircuitMatrix(c));
    EXPECT_LT(oracle::maxDeviation(product, oracle::identityMatrix(16)), TOL);
  }
}

TEST(Circuit, ConcatInverse) {
  const auto q = qc::qft(3);
  const auto combined = qc::concatInverse(q, q);
  EXPECT_EQ(combined.size(), 14U);
  EXPECT_EQ(qc::concatInverse(qc::Circuit(2), qc::Circuit(2)).size(), 0U);
  EXPECT_THROW((void)qc::concatInverse(qc::Circuit(2), qc::Circuit(3)),
               std::invalid_argument);
  const auto state = oracle::denseSimulate(combined);
  EXPECT_NEAR(std::abs(state.amplitudes[0]), 1., TOL);
}

TEST(Generators, QftMatchesFigureOne) {
  const auto c = qc::qft(3);
  qc::Circuit expected(3);
  expected.h(0);
  expected.cp(qc::PI / 2, 1, 0);
  expected.cp(qc::PI / 4, 2, 0);
  expected.h(1);
  expected.cp(qc::PI / 2, 2, 1);
  expected.h(2);
  expected.swap(0, 2);
  EXPECT_EQ(c, expected);
}

TEST(Generators, QftGateCount) {
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(qc::qft(n).size(), n + n * (n - 1) / 2 + n / 2);
  }
}

TEST(Generators, QftOnZeroIsUniform) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto s = oracle::denseSimulate(qc::qft(n));
    const double expected = 1. / std::sqrt(static_cast<double>(1U << n));
    for (const auto& a : s.amplitudes) {
      EXPECT_NEAR(a.real(), expected, TOL);
      EXPECT_NEAR(a.imag(), 0., TOL);
    }
  }
}

TEST(Generators, QftIsTheBitReversedFourierMatrix) {
  // H acts on q[0] first, so with q[0] least significant the circuit is the
  // Fourier matrix with both row and column indices bit-reversed
  const std::size_t n = 4;
  const std::size_t dim = 16;
  const auto reverse = [&](std::size_t x) {
    std::size_t r = 0;
    for (std::size_t q = 0; q < n; ++q) {
      r |= ((x >> q) & 1U) << (n - 1 - q);
    }
    return r;
  };
  const auto m = oracle::denseCircuitMatrix(qc::qft(n));
  double worst = 0.;
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) {
      const auto expected = std::polar(
          1. / 4., 2 * qc::PI * static_cast<double>(reverse(j) * reverse(k)) / dim);
      worst = std::max(worst, std::abs(m(j, k) - expected));
    }
  }
  EXPECT_LT(worst, TOL);
}

TEST(Generators, GhzAmplitudes) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto c = qc::ghz(n);
    EXPECT_EQ(c.size(), n);
    const auto s = oracle::denseSimulate(c);
    const double r = std::sqrt(.5);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      const double expected = (i == 0 || i == s.amplitudes.size() - 1) ? r : 0.;
      EXPECT_NEAR(std::abs(s.amplitudes[i] - expected), 0., TOL);
    }
  }
}

TEST(Generators, WStateAmplitudes) {
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto s = oracle::denseSimulate(qc::wState(n));
    const double expected = 1. / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      const double target = std::popcount(i) == 1 ? expected : 0.;
      EXPECT_NEAR(std::abs(s.amplitudes[i] - target), 0., TOL)
          << "n=" << n << " i=" << i;
    }
  }
  EXPECT_THROW((void)qc::wState(1), std::invalid_argument);
}

TEST(Generators, GraphStateSigns) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto s = oracle::denseSimulate(qc::graphState(n));
    const double mag = 1. / std::sqrt(static_cast<double>(1U << n));
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      std::size_t edges = 0;
      for (std::size_t q = 0; q + 1 < n; ++q) {
        edges += ((i >> q) & 1U) & ((i >> (q + 1)) & 1U);
      }
      if (n > 2) {
        edges += ((i >> (n - 1)) & 1U) & (i & 1U);
      }
      const double expected = edges % 2 == 0 ? mag : -mag;
      EXPECT_NEAR(std::abs(s.amplitudes[i] - expected), 0., TOL);
    }
  }
}

TEST(Generators, DeutschJozsaIsBalanced) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto s = oracle::denseSimulate(qc::deutschJozsa(n));
    const std::size_t ancillaBit = std::size_t{1} << (n - 1);
    const double zeroInputs =
        std::norm(s.amplitudes[0]) + std::norm(s.amplitudes[ancillaBit]);
    EXPECT_NEAR(zeroInputs, 0., TOL);
    EXPECT_NEAR(std::abs(s.amplitudes[ancillaBit - 1]), std::sqrt(.5), TOL);
    EXPECT_NEAR(std::abs(s.amplitudes[2 * ancillaBit - 1]), std::sqrt(.5),
                TOL);
  }
}

TEST(Generators, EntangledQftStartsWithGhz) {
  const auto c = qc::entangledQft(4);
  const auto ghz = qc::ghz(4);
  const auto q = qc::qft(4);
  ASSERT_EQ(c.size(), ghz.size() + q.size());
  for (std::size_t i = 0; i < ghz.size(); ++i) {
    EXPECT_EQ(c[i], ghz[i]);
  }
}

TEST(Generators, RejectInvalidSizes) {
  EXPECT_THROW((void)qc::ghz(0), std::invalid_argument);
  EXPECT_THROW((void)qc::qft(0), std::invalid_argument);
  EXPECT_THROW((void)qc::entangledQft(1), std::invalid_argument);
  EXPECT_THROW((void)qc::graphState(1), std::invalid_argument);
  EXPECT_THROW((void)qc::deutschJozsa(1), std::invalid_argument);
}

TEST(Generators, RandomCircuitsAreDeterministic) {
  EXPECT_EQ(qc::randomCircuit(5, 40, 3), qc::randomCircuit(5, 40, 3));
  EXPECT_NE(qc::randomCircuit(5, 40, 3), qc::randomCircuit(5, 40, 4));
  EXPECT_EQ(qc::randomCircuit(1, 10, 0).size(), 10U);
}

} // namespace
