#pragma once

#include "ddpath/circuit/circuit.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddpath::qc {

namespace detail {
inline void requireQubits(std::size_t n, std::size_t minimum,
                          const char* family) {
  if (n < minimum) {
    throw std::invalid_argument(std::string(family) + " needs at least " +
                                std::to_string(minimum) + " qubit(s), got " +
                                std::to_string(n));
  }
}
} // namespace detail

/// (|0...0> + |1...1>)/sqrt(2): H on qubit 0 and a CX chain upwards.
[[nodiscard]] inline Circuit ghz(std::size_t n) {
  detail::requireQubits(n, 1, "ghz");
  Circuit c(n);
  c.h(0);
  for (std::size_t q = 0; q + 1 < n; ++q) {
    c.cx(q, q + 1);
  }
  return c;
}

/// Quantum Fourier transform: for every qubit i an H followed by controlled
/// phases pi/2^(j-i) from each higher qubit j, then floor(n/2) SWAPs
/// reversing the qubit order. For n = 3 this is
/// H(0) CP(pi/2;1,0) CP(pi/4;2,0) H(1) CP(pi/2;2,1) H(2) SWAP(0,2).
[[nodiscard]] inline Circuit qft(std::size_t n) {
  detail::requireQubits(n, 1, "qft");
  Circuit c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.h(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      c.cp(PI / static_cast<fp>(std::size_t{1} << (j - i)), j, i);
    }
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    c.swap(i, n - 1 - i);
  }
  return c;
}

/// GHZ preparation followed by the QFT.
[[nodiscard]] inline Circuit entangledQft(std::size_t n) {
  detail::requireQubits(n, 2, "qftentangled");
  Circuit c = ghz(n);
  c.append(qft(n));
  return c;
}

/// W state (equal superposition of all weight-one basis states), built from
/// an RY/CZ cascade and a closing CX ladder.
[[nodiscard]] inline Circuit wState(std::size_t n) {
  detail::requireQubits(n, 2, "wstate");
  Circuit c(n);
  c.x(n - 1);
  for (std::size_t m = 1; m < n; ++m) {
    const fp theta = std::acos(std::sqrt(1. / static_cast<fp>(n - m + 1)));
    const std::size_t i = n - m;
    const std::size_t j = n - m - 1;
    c.ry(-theta, j);
    c.cz(i, j);
    c.ry(theta, j);
  }
  for (std::size_t k = n - 1; k >= 1; --k) {
    c.cx(k - 1, k);
  }
  return c;
}

/// Graph state: H on every qubit, then CZ for each edge.
[[nodiscard]] inline Circuit
graphState(std::size_t n, const std::vector<std::pair<Qubit, Qubit>>& edges) {
  detail::requireQubits(n, 2, "graph");
  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) {
    c.h(q);
  }
  for (const auto& [a, b] : edges) {
    c.cz(a, b);
  }
  return c;
}

/// Graph state on the ring 0-1-...-(n-1)-0 (a single edge for n = 2).
[[nodiscard]] inline Circuit graphState(std::size_t n) {
  detail::requireQubits(n, 2, "graph");
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (std::size_t q = 0; q + 1 < n; ++q) {
    edges.emplace_back(q, q + 1);
  }
  if (n > 2) {
    edges.emplace_back(n - 1, 0);
  }
  return graphState(n, edges);
}

/// Deutsch-Jozsa over n-1 inputs and the ancilla q[n-1], with the balanced
/// oracle f(x) = x_0 xor ... xor x_{n-2}.
[[nodiscard]] inline Circuit deutschJozsa(std::size_t n) {
  detail::requireQubits(n, 2, "dj");
  const Qubit ancilla = n - 1;
  Circuit c(n);
  c.x(ancilla);
  for (std::size_t q = 0; q < n; ++q) {
    c.h(q);
  }
  for (std::size_t q = 0; q < ancilla; ++q) {
    c.cx(q, ancilla);
  }
  for (std::size_t q = 0; q < ancilla; ++q) {
    c.h(q);
  }
  return c;
}

/// Pseudo-random circuit over the whole gate alphabet (deterministic in
/// `seed`). Two-qubit gates need n >= 2; with n == 1 only single-qubit
/// gates are drawn.
[[nodiscard]] inline Circuit randomCircuit(std::size_t n, std::size_t gates,
                                           std::uint64_t seed) {
  detail::requireQubits(n, 1, "random");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<fp> angle(-PI, PI);
  const auto pick = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  const auto pickOther = [&](Qubit q) {
    Qubit r = pick(n - 1);
    return r >= q ? r + 1 : r;
  };
  constexpr OpType singles[] = {OpType::X,   OpType::Y,  OpType::Z,
                                OpType::H,   OpType::S,  OpType::Sdg,
                                OpType::T,   OpType::Tdg, OpType::SX,
                                OpType::SXdg, OpType::P, OpType::RY,
                                OpType::RZ,  OpType::U};
  Circuit c(n);
  while (c.size() < gates) {
    const std::size_t choice = pick(n >= 2 ? 20 : 14);
    const Qubit q = pick(n);
    if (choice < 14) {
      const OpType op = singles[choice];
      std::array<fp, 3> params{};
      for (std::size_t k = 0; k < parameterCount(op); ++k) {
        params[k] = angle(rng);
      }
      c.append(makeGate(op, {}, {q}, params));
      continue;
    }
    const Qubit other = pickOther(q);
    switch (choice) {
    case 14:
      c.cx(q, other);
      break;
    case 15:
      c.cz(q, other);
      break;
    case 16:
      c.cp(angle(rng), q, other);
      break;
    case 17:
      c.swap(q, other);
      break;
    case 18:
      // controlled arbitrary unitary
      c.append(makeGate(OpType::U, {q}, {other},
                        {angle(rng), angle(rng), angle(rng)}));
      break;
    default: {
      if (n >= 3) {
        Qubit third = pick(n);
        while (third == q || third == other) {
          third = pick(n);
        }
        c.append(makeGate(OpType::X, {q, other}, {third}));
      } else {
        c.cx(other, q);
      }
      break;
    }
    }
  }
  return c;
}

} // namespace ddpath::qc
