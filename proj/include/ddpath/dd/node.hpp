#pragma once

#include "ddpath/dd/complex.hpp"

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace ddpath::dd {

using Level = std::int32_t;

/// Weighted reference into a decision diagram. A zero weight always goes
/// together with the terminal node (the "zero stub").
template <class NodeT> struct Edge {
  NodeT* p = nullptr;
  Complex w{0., 0.};

  [[nodiscard]] bool isTerminal() const noexcept { return p->isTerminal(); }
  [[nodiscard]] bool isZero() const noexcept {
    return w.real() == 0. && w.imag() == 0.;
  }
  /// Level of the root node, -1 for terminal edges.
  [[nodiscard]] Level level() const noexcept { return p->level; }

  [[nodiscard]] static Edge zero() noexcept { return {NodeT::terminal(), 0.}; }
  [[nodiscard]] static Edge one() noexcept { return {NodeT::terminal(), 1.}; }
  [[nodiscard]] static Edge terminal(const Complex& w) noexcept {
    return {NodeT::terminal(), w};
  }

  /// Exact equality. Weights are interned, so equal values are bit-equal.
  friend bool operator==(const Edge& a, const Edge& b) noexcept {
    return a.p == b.p && a.w == b.w;
  }
};

/// Decision-diagram node with `Arity` successors: 2 for state vectors,
/// 4 for operator matrices (ordered 00, 01, 10, 11).
template <std::size_t Arity> struct Node {
  static constexpr std::size_t ARITY = Arity;

  std::array<Edge<Node>, Arity> e{};
  Node* next = nullptr; // free-list link
  std::uint32_t ref = 0;
  Level level = -1;
  bool mark = false;

  [[nodiscard]] bool isTerminal() const noexcept { return level < 0; }

  [[nodiscard]] static Node* terminal() noexcept {
    static Node node{};
    return &node;
  }
};

using vNode = Node<2>;
using mNode = Node<4>;
using vEdge = Edge<vNode>;
using mEdge = Edge<mNode>;

namespace detail {
inline std::size_t combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6U) + (seed >> 2U));
}
inline std::size_t hashDouble(fp value) noexcept {
  // +0.0 and -0.0 compare equal and must hash equally.
  return value == 0. ? 0U : std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(value));
}
} // namespace detail

template <class NodeT>
[[nodiscard]] std::size_t hashEdge(const Edge<NodeT>& e) noexcept {
  std::size_t h = std::hash<const void*>{}(e.p);
  h = detail::combine(h, detail::hashDouble(e.w.real()));
  return detail::combine(h, detail::hashDouble(e.w.imag()));
}

} // namespace ddpath::dd
