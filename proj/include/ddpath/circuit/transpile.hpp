#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ddpath::qc {

using GateSet = std::set<GateKind>;

/// {H, P(theta), CX}.
[[nodiscard]] inline GateSet defaultGateSet() {
  return {GateKind{OpType::H, 0}, GateKind{OpType::P, 0},
          GateKind{OpType::X, 1}};
}

namespace detail {

/// m = e^{i alpha} U(theta, phi, lambda) with theta in [0, pi].
inline std::pair<fp, std::array<fp, 3>> zyz(const Matrix2& m) {
  constexpr fp eps = 1e-12;
  const fp c = std::abs(m[0]);
  const fp s = std::abs(m[2]);
  const fp theta = 2 * std::atan2(s, c);
  if (s <= eps) {
    const fp alpha = std::arg(m[0]);
    return {alpha, {theta, 0., std::arg(m[3]) - alpha}};
  }
  if (c <= eps) {
    const fp alpha = std::arg(m[2]);
    return {alpha, {theta, 0., std::arg(-m[1]) - alpha}};
  }
  const fp alpha = std::arg(m[0]);
  return {alpha, {theta, std::arg(m[2]) - alpha, std::arg(-m[1]) - alpha}};
}

/// One rewriting step for gates outside the native set. Rules never
/// optimise; every result is equal to `g` up to a global phase.
[[nodiscard]] inline std::optional<std::vector<Gate>> rewrite(const Gate& g) {
  const auto kind = g.kind();
  const fp theta = g.params[0];
  if (kind.controls == 0) {
    const Qubit q = g.targets.empty() ? 0 : g.targets[0];
    switch (g.op) {
    case OpType::I:
      return std::vector<Gate>{};
    case OpType::X:
      return std::vector{h(q), p(PI, q), h(q)};
    case OpType::Y:
      return std::vector{p(PI, q), h(q), p(PI, q), h(q)};
    case OpType::Z:
      return std::vector{p(PI, q)};
    case OpType::S:
      return std::vector{p(PI / 2, q)};
    case OpType::Sdg:
      return std::vector{p(-PI / 2, q)};
    case OpType::T:
      return std::vector{p(PI / 4, q)};
    case OpType::Tdg:
      return std::vector{p(-PI / 4, q)};
    case OpType::SX:
      return std::vector{h(q), p(PI / 2, q), h(q)};
    case OpType::SXdg:
      return std::vector{h(q), p(-PI / 2, q), h(q)};
    case OpType::RZ:
      return std::vector{p(theta, q)};
    case OpType::RY:
      // RY = S H RZ H Sdg
      return std::vector{p(-PI / 2, q), h(q), p(theta, q), h(q),
                         p(PI / 2, q)};
    case OpType::U:
      // U(theta, phi, lambda) ~ RZ(phi) RY(theta) RZ(lambda)
      return std::vector{p(g.params[2], q), ry(g.params[0], q),
                         p(g.params[1], q)};
    case OpType::SWAP: {
      const Qubit a = g.targets[0];
      const Qubit b = g.targets[1];
      return std::vector{cx(a, b), cx(b, a), cx(a, b)};
    }
    default:
      return std::nullopt;
    }
  }
  if (kind.controls == 1) {
    const Qubit c = g.controls[0];
    const Qubit t = g.targets[0];
    switch (g.op) {
    case OpType::P:
      return std::vector{p(theta / 2, c), cx(c, t), p(-theta / 2, t), cx(c, t),
                         p(theta / 2, t)};
    case OpType::Z:
      return std::vector{cp(PI, c, t)};
    case OpType::U: {
      const fp phi = g.params[1];
      const fp lambda = g.params[2];
      return std::vector{p((lambda + phi) / 2, c), p((lambda - phi) / 2, t),
                         cx(c, t), u(-theta / 2, 0., -(phi + lambda) / 2, t),
                         cx(c, t), u(theta / 2, phi, 0., t)};
    }
    case OpType::SWAP: {
      const Qubit a = g.targets[0];
      const Qubit b = g.targets[1];
      return std::vector{cx(b, a), makeGate(OpType::X, {c, a}, {b}),
                         cx(b, a)};
    }
    default: {
      // controlled-(e^{i alpha} U) = P(alpha) on the control, then CU
      const auto [alpha, angles] = zyz(g.matrix());
      return std::vector{p(alpha, c),
                         makeGate(OpType::U, {c}, {t}, angles)};
    }
    }
  }
  if (kind.controls == 2 && g.op == OpType::X) {
    const Qubit a = g.controls[0];
    const Qubit b = g.controls[1];
    const Qubit x = g.targets[0];
    return std::vector{h(x),    cx(b, x), tdg(x), cx(a, x), t(x),
                       cx(b, x), tdg(x),  cx(a, x), t(b),   t(x),
                       h(x),    cx(a, b), t(a),   tdg(b),   cx(a, b)};
  }
  return std::nullopt;
}

inline void expand(const Gate& g, const GateSet& gateset,
                   std::vector<Gate>& out, std::size_t depth = 0) {
  if (gateset.contains(g.kind())) {
    out.push_back(g);
    return;
  }
  const auto replacement = rewrite(g);
  if (!replacement || depth > 8) {
    throw UnsupportedGateError("no decomposition rule for gate '" + g.name() +
                               "' into the native gate set");
  }
  for (const auto& r : *replacement) {
    expand(r, gateset, out, depth + 1);
  }
}

} // namespace detail

/// Rewrites every gate into `gateset` using fixed rules (no optimisation):
/// SWAP -> 3 CX; CP(t) -> P(t/2)@c, CX, P(-t/2)@t, CX, P(t/2)@t;
/// CZ -> CP(pi) -> 5 gates; native kinds pass through. The result equals `c`
/// up to a global phase.
[[nodiscard]] inline Circuit transpile(const Circuit& c,
                                       const GateSet& gateset = defaultGateSet()) {
  Circuit out(c.qubits());
  std::vector<Gate> expanded;
  for (const auto& g : c.gates()) {
    expanded.clear();
    detail::expand(g, gateset, expanded);
    for (auto& r : expanded) {
      out.append(std::move(r));
    }
  }
  return out;
}

/// Number of native gates `transpile` emits for one gate of `kind`.
[[nodiscard]] inline std::size_t
decompositionCost(const GateKind& kind,
                  const GateSet& gateset = defaultGateSet()) {
  // Rules only depend on the kind, so expand a representative instance.
  Gate g;
  g.op = kind.op;
  for (std::size_t i = 0; i < kind.controls; ++i) {
    g.controls.push_back(i);
  }
  for (std::size_t i = 0; i < targetCount(kind.op); ++i) {
    g.targets.push_back(kind.controls + i);
  }
  g.params = {0.3, 0.2, 0.1};
  std::vector<Gate> expanded;
  detail::expand(g, gateset, expanded);
  return expanded.size();
}

/// decompositionCost for every kind appearing in `c`.
[[nodiscard]] inline std::map<GateKind, std::size_t>
costTable(const Circuit& c, const GateSet& gateset = defaultGateSet()) {
  std::map<GateKind, std::size_t> table;
  for (const auto& g : c.gates()) {
    if (!table.contains(g.kind())) {
      table.emplace(g.kind(), decompositionCost(g.kind(), gateset));
    }
  }
  return table;
}

} // namespace ddpath::qc
