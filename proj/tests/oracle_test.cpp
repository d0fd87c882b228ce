#include "ddpath/circuit/generators.hpp"
#include "ddpath/oracle/dense.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace ddpath;
using oracle::Complex;

constexpr double TOL = 1e-12;

TEST(Oracle, GhzAmplitudes) {
  const auto s = oracle::denseSimulate(qc::ghz(3));
  ASSERT_EQ(s.amplitudes.size(), 8U);
  EXPECT_NEAR(s.amplitudes[0].real(), std::sqrt(.5), TOL);
  EXPECT_NEAR(s.amplitudes[7].real(), std::sqrt(.5), TOL);
  for (std::size_t i = 1; i < 7; ++i) {
    EXPECT_EQ(s.amplitudes[i], Complex{});
  }
}

TEST(Oracle, EmptyCircuitKeepsTheInitialState) {
  const auto s = oracle::denseSimulate(qc::Circuit(3), "101");
  EXPECT_EQ(s.amplitudes[5], Complex{1.});
  EXPECT_NEAR(s.norm(), 1., TOL);
}

TEST(Oracle, BasisStringsAreMsbFirst) {
  EXPECT_EQ(oracle::basisIndex("001"), 1U);
  EXPECT_EQ(oracle::basisIndex("100"), 4U);
  EXPECT_THROW((void)oracle::basisIndex("10x"), std::invalid_argument);
  EXPECT_THROW((void)oracle::basisState(3, "10"), std::invalid_argument);
  qc::Circuit c(3);
  c.x(0);
  EXPECT_EQ(oracle::denseSimulate(c).amplitudes[1], Complex{1.});
}

TEST(Oracle, GateMatrices) {
  const auto x = oracle::denseGateMatrix(qc::x(0), 1);
  EXPECT_EQ(x(0, 1), Complex{1.});
  EXPECT_EQ(x(1, 0), Complex{1.});
  EXPECT_EQ(x(0, 0), Complex{});

  const auto cs =
      oracle::denseGateMatrix(qc::makeGate(qc::OpType::S, {0}, {1}), 2);
  oracle::DenseMatrix expected = oracle::identityMatrix(4);
  expected(3, 3) = Complex{0., 1.};
  EXPECT_LT(oracle::maxDeviation(cs, expected), TOL);

  // H on the most significant qubit is H (x) I (x) I
  const auto h2 = oracle::denseGateMatrix(qc::h(2), 3);
  const double r = std::sqrt(.5);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      double value = 0.;
      if ((i & 3U) == (j & 3U)) {
        value = (i >> 2U) == 1 && (j >> 2U) == 1 ? -r : r;
      }
      EXPECT_NEAR(std::abs(h2(i, j) - value), 0., TOL);
    }
  }
  EXPECT_THROW((void)oracle::denseGateMatrix(qc::x(3), 3),
               std::invalid_argument);
}

TEST(Oracle, CompareStates) {
  const auto a = oracle::denseSimulate(qc::ghz(2)).amplitudes;
  auto b = a;
  for (auto& v : b) {
    v *= Complex{0., 1.};
  }
  EXPECT_NEAR(oracle::compareStates(a, b, true), 0., TOL);
  auto negated = a;
  for (auto& v : negated) {
    v = -v;
  }
  EXPECT_NEAR(oracle::compareStates(a, negated, false), 2 * std::sqrt(.5), TOL);
  EXPECT_THROW((void)oracle::compareStates(a, std::vector<Complex>(2), false),
               std::invalid_argument);
}

TEST(Oracle, InnerProduct) {
  const auto a = oracle::denseSimulate(qc::ghz(3)).amplitudes;
  EXPECT_NEAR(std::abs(oracle::innerProduct(a, a) - 1.), 0., TOL);
  const auto zero = oracle::basisState(3, "000").amplitudes;
  EXPECT_NEAR(std::abs(oracle::innerProduct(zero, a) - std::sqrt(.5)), 0., TOL);
}

TEST(Oracle, CapacityLimits) {
  EXPECT_THROW((void)oracle::denseSimulate(qc::ghz(15)), CapacityError);
  EXPECT_NO_THROW((void)oracle::denseSimulate(qc::ghz(14)));
  EXPECT_THROW((void)oracle::denseCircuitMatrix(qc::ghz(9)), CapacityError);
  EXPECT_THROW((void)oracle::denseGateMatrix(qc::h(0), 9), CapacityError);
}

TEST(Oracle, PreservesNormAndUnitarity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = qc::randomCircuit(6, 60, seed);
    EXPECT_NEAR(oracle::denseSimulate(c).norm(), 1., 1e-10);
    const auto u = oracle::denseCircuitMatrix(c);
    EXPECT_LT(oracle::maxDeviation(oracle::multiply(oracle::adjoint(u), u),
                                   oracle::identityMatrix(u.dim)),
              1e-10);
  }
}

} // namespace
