#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/// Dense state-vector reference simulator. Shares nothing with the
/// decision-diagram kernel beyond std::complex and the 2x2 gate matrices.
namespace ddpath::oracle {

using fp = double;
using Complex = std::complex<fp>;

inline constexpr std::size_t MAX_SIMULATE_QUBITS = 14;
inline constexpr std::size_t MAX_MATRIX_QUBITS = 8;

struct DenseState {
  std::size_t qubits = 0;
  std::vector<Complex> amplitudes;

  [[nodiscard]] fp norm() const {
    fp sum = 0.;
    for (const auto& a : amplitudes) {
      sum += std::norm(a);
    }
    return sum;
  }
};

/// Row-major square matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Complex> entries;

  [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
    return entries[row * dim + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) {
    return entries[row * dim + col];
  }
};

[[nodiscard]] inline DenseMatrix multiply(const DenseMatrix& a,
                                          const DenseMatrix& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("matrix dimensions differ");
  }
  DenseMatrix c{a.dim, std::vector<Complex>(a.dim * a.dim)};
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) {
        continue;
      }
      for (std::size_t j = 0; j < a.dim; ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

[[nodiscard]] inline DenseMatrix adjoint(const DenseMatrix& a) {
  DenseMatrix c{a.dim, std::vector<Complex>(a.dim * a.dim)};
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      c(j, i) = std::conj(a(i, j));
    }
  }
  return c;
}

/// Largest |a_ij - b_ij|.
[[nodiscard]] inline fp maxDeviation(const DenseMatrix& a,
                                     const DenseMatrix& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("matrix dimensions differ");
  }
  fp worst = 0.;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
  }
  return worst;
}

[[nodiscard]] inline DenseMatrix identityMatrix(std::size_t dim) {
  DenseMatrix m{dim, std::vector<Complex>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = 1.;
  }
  return m;
}

/// Applies `gate` in place by strided amplitude updates.
inline void applyGate(std::vector<Complex>& amps, const qc::Gate& gate) {
  std::size_t controlMask = 0;
  for (const auto c : gate.controls) {
    controlMask |= std::size_t{1} << c;
  }
  const std::size_t size = amps.size();
  if (gate.op == qc::OpType::SWAP) {
    const std::size_t a = std::size_t{1} << gate.targets[0];
    const std::size_t b = std::size_t{1} << gate.targets[1];
    for (std::size_t i = 0; i < size; ++i) {
      // visit each (a=1, b=0) index once and swap with its (a=0, b=1) twin
      if ((i & controlMask) == controlMask && (i & a) != 0 && (i & b) == 0) {
        std::swap(amps[i], amps[(i & ~a) | b]);
      }
    }
    return;
  }
  const auto u = gate.matrix();
  const std::size_t t = std::size_t{1} << gate.targets[0];
  for (std::size_t i = 0; i < size; ++i) {
    if ((i & t) != 0 || (i & controlMask) != controlMask) {
      continue;
    }
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | t];
    amps[i] = u[0] * a0 + u[1] * a1;
    amps[i | t] = u[2] * a0 + u[3] * a1;
  }
}

[[nodiscard]] inline std::size_t basisIndex(std::string_view bits) {
  std::size_t index = 0;
  for (const char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("basis string '" + std::string(bits) +
                                  "' must consist of 0 and 1");
    }
    index = (index << 1U) | static_cast<std::size_t>(c == '1');
  }
  return index;
}

[[nodiscard]] inline DenseState basisState(std::size_t n,
                                           std::string_view bits) {
  if (n > MAX_SIMULATE_QUBITS) {
    throw CapacityError("dense simulation is limited to " +
                        std::to_string(MAX_SIMULATE_QUBITS) + " qubits");
  }
  if (bits.size() != n) {
    throw std::invalid_argument("basis string length does not match qubits");
  }
  DenseState state{n, std::vector<Complex>(std::size_t{1} << n)};
  state.amplitudes[basisIndex(bits)] = 1.;
  return state;
}

/// Applies `c` to `initial` gate by gate.
[[nodiscard]] inline DenseState denseSimulate(const qc::Circuit& c,
                                              DenseState initial) {
  if (c.qubits() > MAX_SIMULATE_QUBITS) {
    throw CapacityError("dense simulation is limited to " +
                        std::to_string(MAX_SIMULATE_QUBITS) + " qubits");
  }
  if (initial.qubits != c.qubits()) {
    throw std::invalid_argument("initial state and circuit sizes differ");
  }
  for (const auto& gate : c.gates()) {
    applyGate(initial.amplitudes, gate);
  }
  return initial;
}

[[nodiscard]] inline DenseState denseSimulate(const qc::Circuit& c,
                                              std::string_view initial) {
  return denseSimulate(c, basisState(c.qubits(), initial));
}

[[nodiscard]] inline DenseState denseSimulate(const qc::Circuit& c) {
  return denseSimulate(c, std::string(c.qubits(), '0'));
}

/// The full 2^n x 2^n matrix of `gate` (identity on the other qubits).
[[nodiscard]] inline DenseMatrix denseGateMatrix(const qc::Gate& gate,
                                                 std::size_t n) {
  if (n > MAX_MATRIX_QUBITS) {
    throw CapacityError("dense gate matrices are limited to " +
                        std::to_string(MAX_MATRIX_QUBITS) + " qubits");
  }
  for (const auto q : gate.support()) {
    if (q >= n) {
      throw std::invalid_argument("gate qubit out of range");
    }
  }
  const std::size_t dim = std::size_t{1} << n;
  DenseMatrix m{dim, std::vector<Complex>(dim * dim)};
  std::vector<Complex> column(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(column.begin(), column.end(), Complex{});
    column[j] = 1.;
    applyGate(column, gate);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, j) = column[i];
    }
  }
  return m;
}

/// Unitary of a whole circuit (n <= 8).
[[nodiscard]] inline DenseMatrix denseCircuitMatrix(const qc::Circuit& c) {
  if (c.qubits() > MAX_MATRIX_QUBITS) {
    throw CapacityError("dense circuit matrices are limited to " +
                        std::to_string(MAX_MATRIX_QUBITS) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << c.qubits();
  DenseMatrix m{dim, std::vector<Complex>(dim * dim)};
  std::vector<Complex> column(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(column.begin(), column.end(), Complex{});
    column[j] = 1.;
    for (const auto& gate : c.gates()) {
      applyGate(column, gate);
    }
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, j) = column[i];
    }
  }
  return m;
}

/// Max per-amplitude deviation between two states. With
/// `upToGlobalPhase`, `b` is first rotated by the unit phase that aligns its
/// largest-magnitude amplitude with the corresponding amplitude of `a`.
[[nodiscard]] inline fp compareStates(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b,
                                      bool upToGlobalPhase) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("states have different sizes");
  }
  Complex phase = 1.;
  if (upToGlobalPhase && !b.empty()) {
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (std::abs(b[i]) > std::abs(b[pivot])) {
        pivot = i;
      }
    }
    if (std::abs(a[pivot]) > 0. && std::abs(b[pivot]) > 0.) {
      phase = (a[pivot] / std::abs(a[pivot])) / (b[pivot] / std::abs(b[pivot]));
    }
  }
  fp worst = 0.;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  }
  return worst;
}

[[nodiscard]] inline fp compareStates(const DenseState& a, const DenseState& b,
                                      bool upToGlobalPhase) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("states have different qubit counts");
  }
  return compareStates(a.amplitudes, b.amplitudes, upToGlobalPhase);
}

/// <a|b>.
[[nodiscard]] inline Complex innerProduct(const std::vector<Complex>& a,
                                          const std::vector<Complex>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("states have different sizes");
  }
  Complex sum = 0.;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

} // namespace ddpath::oracle
