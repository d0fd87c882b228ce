#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddpath::qc {

using fp = double;
using Qubit = std::size_t;
using Complex = std::complex<fp>;

/// Row-major 2x2 matrix (u00, u01, u10, u11).
using Matrix2 = std::array<Complex, 4>;

inline constexpr fp PI = std::numbers::pi_v<fp>;

/// Base operation of a gate. Controlled variants are expressed through the
/// gate's control list, so CX is `X` with one control and CP is `P` with one.
enum class OpType {
  I,
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  SX,
  SXdg,
  P,
  RY,
  RZ,
  U,
  SWAP,
};

[[nodiscard]] constexpr std::size_t parameterCount(OpType op) noexcept {
  switch (op) {
  case OpType::P:
  case OpType::RY:
  case OpType::RZ:
    return 1;
  case OpType::U:
    return 3;
  default:
    return 0;
  }
}

[[nodiscard]] constexpr std::size_t targetCount(OpType op) noexcept {
  return op == OpType::SWAP ? 2 : 1;
}

/// Lower-case OpenQASM name of the uncontrolled operation.
[[nodiscard]] constexpr std::string_view baseName(OpType op) noexcept {
  switch (op) {
  case OpType::I:
    return "id";
  case OpType::X:
    return "x";
  case OpType::Y:
    return "y";
  case OpType::Z:
    return "z";
  case OpType::H:
    return "h";
  case OpType::S:
    return "s";
  case OpType::Sdg:
    return "sdg";
  case OpType::T:
    return "t";
  case OpType::Tdg:
    return "tdg";
  case OpType::SX:
    return "sx";
  case OpType::SXdg:
    return "sxdg";
  case OpType::P:
    return "p";
  case OpType::RY:
    return "ry";
  case OpType::RZ:
    return "rz";
  case OpType::U:
    return "u3";
  case OpType::SWAP:
    return "swap";
  }
  return "?";
}

/// Gate kind as seen by the transpiler and the cost model: the base
/// operation together with its number of controls.
struct GateKind {
  OpType op = OpType::I;
  std::size_t controls = 0;

  friend constexpr auto operator<=>(const GateKind&, const GateKind&) = default;

  [[nodiscard]] std::string name() const {
    return std::string(controls, 'c') + std::string(baseName(op));
  }
};

struct Gate {
  OpType op = OpType::I;
  std::vector<Qubit> controls;
  std::vector<Qubit> targets;
  std::array<fp, 3> params{};

  friend bool operator==(const Gate&, const Gate&) = default;

  [[nodiscard]] GateKind kind() const noexcept { return {op, controls.size()}; }

  /// Qubits the gate acts on (controls and targets), sorted.
  [[nodiscard]] std::vector<Qubit> support() const {
    std::vector<Qubit> qubits = controls;
    qubits.insert(qubits.end(), targets.begin(), targets.end());
    std::sort(qubits.begin(), qubits.end());
    return qubits;
  }

  [[nodiscard]] std::string name() const { return kind().name(); }

  /// The 2x2 matrix applied to the target (undefined for SWAP).
  [[nodiscard]] Matrix2 matrix() const {
    using namespace std::complex_literals;
    const fp r = std::numbers::sqrt2_v<fp> / 2;
    switch (op) {
    case OpType::I:
      return {1., 0., 0., 1.};
    case OpType::X:
      return {0., 1., 1., 0.};
    case OpType::Y:
      return {0., -1i, 1i, 0.};
    case OpType::Z:
      return {1., 0., 0., -1.};
    case OpType::H:
      return {r, r, r, -r};
    case OpType::S:
      return {1., 0., 0., 1i};
    case OpType::Sdg:
      return {1., 0., 0., -1i};
    case OpType::T:
      return {1., 0., 0., Complex{r, r}};
    case OpType::Tdg:
      return {1., 0., 0., Complex{r, -r}};
    case OpType::SX:
      return {Complex{.5, .5}, Complex{.5, -.5}, Complex{.5, -.5},
              Complex{.5, .5}};
    case OpType::SXdg:
      return {Complex{.5, -.5}, Complex{.5, .5}, Complex{.5, .5},
              Complex{.5, -.5}};
    case OpType::P:
      return {1., 0., 0., std::polar(1., params[0])};
    case OpType::RY: {
      const fp c = std::cos(params[0] / 2);
      const fp s = std::sin(params[0] / 2);
      return {c, -s, s, c};
    }
    case OpType::RZ:
      return {std::polar(1., -params[0] / 2), 0., 0.,
              std::polar(1., params[0] / 2)};
    case OpType::U: {
      const fp theta = params[0];
      const fp phi = params[1];
      const fp lambda = params[2];
      const fp c = std::cos(theta / 2);
      const fp s = std::sin(theta / 2);
      return {c, -std::polar(s, lambda), std::polar(s, phi),
              std::polar(c, phi + lambda)};
    }
    case OpType::SWAP:
      break;
    }
    throw std::logic_error("gate '" + name() + "' has no 2x2 matrix");
  }
};

/// Inverse of a single gate: S<->Sdg, T<->Tdg, SX<->SXdg, rotation angles
/// negated, U(theta, phi, lambda) -> U(-theta, -lambda, -phi).
[[nodiscard]] inline Gate inverse(const Gate& gate) {
  Gate inv = gate;
  switch (gate.op) {
  case OpType::S:
    inv.op = OpType::Sdg;
    break;
  case OpType::Sdg:
    inv.op = OpType::S;
    break;
  case OpType::T:
    inv.op = OpType::Tdg;
    break;
  case OpType::Tdg:
    inv.op = OpType::T;
    break;
  case OpType::SX:
    inv.op = OpType::SXdg;
    break;
  case OpType::SXdg:
    inv.op = OpType::SX;
    break;
  case OpType::P:
  case OpType::RY:
  case OpType::RZ:
    inv.params[0] = -gate.params[0];
    break;
  case OpType::U:
    inv.params = {-gate.params[0], -gate.params[2], -gate.params[1]};
    break;
  default:
    break;
  }
  return inv;
}

// Gate factories. Controls come before targets, as in OpenQASM operand order.

[[nodiscard]] inline Gate makeGate(OpType op, std::vector<Qubit> controls,
                                   std::vector<Qubit> targets,
                                   std::array<fp, 3> params = {}) {
  return Gate{op, std::move(controls), std::move(targets), params};
}
[[nodiscard]] inline Gate x(Qubit q) { return makeGate(OpType::X, {}, {q}); }
[[nodiscard]] inline Gate y(Qubit q) { return makeGate(OpType::Y, {}, {q}); }
[[nodiscard]] inline Gate z(Qubit q) { return makeGate(OpType::Z, {}, {q}); }
[[nodiscard]] inline Gate h(Qubit q) { return makeGate(OpType::H, {}, {q}); }
[[nodiscard]] inline Gate s(Qubit q) { return makeGate(OpType::S, {}, {q}); }
[[nodiscard]] inline Gate sdg(Qubit q) {
  return makeGate(OpType::Sdg, {}, {q});
}
[[nodiscard]] inline Gate t(Qubit q) { return makeGate(OpType::T, {}, {q}); }
[[nodiscard]] inline Gate tdg(Qubit q) {
  return makeGate(OpType::Tdg, {}, {q});
}
[[nodiscard]] inline Gate sx(Qubit q) { return makeGate(OpType::SX, {}, {q}); }
[[nodiscard]] inline Gate p(fp theta, Qubit q) {
  return makeGate(OpType::P, {}, {q}, {theta});
}
[[nodiscard]] inline Gate ry(fp theta, Qubit q) {
  return makeGate(OpType::RY, {}, {q}, {theta});
}
[[nodiscard]] inline Gate rz(fp theta, Qubit q) {
  return makeGate(OpType::RZ, {}, {q}, {theta});
}
[[nodiscard]] inline Gate u(fp theta, fp phi, fp lambda, Qubit q) {
  return makeGate(OpType::U, {}, {q}, {theta, phi, lambda});
}
[[nodiscard]] inline Gate cx(Qubit control, Qubit target) {
  return makeGate(OpType::X, {control}, {target});
}
[[nodiscard]] inline Gate cz(Qubit control, Qubit target) {
  return makeGate(OpType::Z, {control}, {target});
}
[[nodiscard]] inline Gate cp(fp theta, Qubit control, Qubit target) {
  return makeGate(OpType::P, {control}, {target}, {theta});
}
[[nodiscard]] inline Gate swap(Qubit a, Qubit b) {
  return makeGate(OpType::SWAP, {}, {a, b});
}

} // namespace ddpath::qc
