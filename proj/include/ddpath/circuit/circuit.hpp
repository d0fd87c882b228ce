#pragma once

#include "ddpath/circuit/gate.hpp"

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddpath::qc {

/// Ordered gate list over a fixed number of qubits. `gates()[0]` is applied
/// first. Qubit 0 is the least-significant bit of a basis index; basis
/// strings are written most-significant qubit first.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::size_t nqubits) : nqubits_(nqubits) {}
  Circuit(std::size_t nqubits, std::vector<Gate> gates) : nqubits_(nqubits) {
    for (auto& g : gates) {
      append(std::move(g));
    }
  }

  [[nodiscard]] std::size_t qubits() const noexcept { return nqubits_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept {
    return gates_;
  }
  [[nodiscard]] const Gate& operator[](std::size_t i) const {
    return gates_[i];
  }
  [[nodiscard]] Gate& at(std::size_t i) { return gates_.at(i); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

  /// Appends a gate after checking that its qubits are distinct, in range,
  /// and that the operand and parameter counts fit its kind.
  Circuit& append(Gate gate) {
    check(gate);
    gates_.push_back(std::move(gate));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.qubits() != nqubits_) {
      throw std::invalid_argument("cannot append a circuit over " +
                                  std::to_string(other.qubits()) +
                                  " qubits to one over " +
                                  std::to_string(nqubits_));
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  Circuit& x(Qubit q) { return append(qc::x(q)); }
  Circuit& h(Qubit q) { return append(qc::h(q)); }
  Circuit& p(fp theta, Qubit q) { return append(qc::p(theta, q)); }
  Circuit& ry(fp theta, Qubit q) { return append(qc::ry(theta, q)); }
  Circuit& rz(fp theta, Qubit q) { return append(qc::rz(theta, q)); }
  Circuit& cx(Qubit c, Qubit t) { return append(qc::cx(c, t)); }
  Circuit& cz(Qubit c, Qubit t) { return append(qc::cz(c, t)); }
  Circuit& cp(fp theta, Qubit c, Qubit t) {
    return append(qc::cp(theta, c, t));
  }
  Circuit& swap(Qubit a, Qubit b) { return append(qc::swap(a, b)); }

private:
  void check(const Gate& gate) const {
    if (gate.targets.size() != targetCount(gate.op)) {
      throw std::invalid_argument("gate '" + gate.name() + "' expects " +
                                  std::to_string(targetCount(gate.op)) +
                                  " target(s)");
    }
    std::set<Qubit> seen;
    for (const auto q : gate.support()) {
      if (q >= nqubits_) {
        throw std::invalid_argument("gate '" + gate.name() + "' uses qubit " +
                                    std::to_string(q) + " but the circuit has " +
                                    std::to_string(nqubits_) + " qubits");
      }
      if (!seen.insert(q).second) {
        throw std::invalid_argument("gate '" + gate.name() +
                                    "' uses qubit " + std::to_string(q) +
                                    " more than once");
      }
    }
  }

  std::size_t nqubits_ = 0;
  std::vector<Gate> gates_;
};

/// Gates reversed, each replaced by its inverse.
[[nodiscard]] inline Circuit invert(const Circuit& c) {
  Circuit inv(c.qubits());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    inv.append(inverse(*it));
  }
  return inv;
}

/// G G'^-1: the gates of `g` followed by the inverse of `gPrime`. Simulating
/// it maps every input to itself iff both circuits are equivalent.
[[nodiscard]] inline Circuit concatInverse(const Circuit& g,
                                           const Circuit& gPrime) {
  if (g.qubits() != gPrime.qubits()) {
    throw std::invalid_argument(
        "circuits act on different numbers of qubits (" +
        std::to_string(g.qubits()) + " vs " + std::to_string(gPrime.qubits()) +
        ")");
  }
  Circuit combined = g;
  combined.append(invert(gPrime));
  return combined;
}

} // namespace ddpath::qc
