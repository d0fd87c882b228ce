#pragma once

#include "ddpath/dd/node.hpp"

#include <cstddef>
#include <cstdio>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace ddpath::dd {

/// Dense amplitude vector of a state DD over n qubits (index bit z = qubit z).
[[nodiscard]] inline std::vector<Complex> toVector(const vEdge& e,
                                                   std::size_t n) {
  std::vector<Complex> out(std::size_t{1} << n, 0.);
  if (e.isZero()) {
    return out;
  }
  struct Frame {
    const vNode* node;
    Complex w;
    std::size_t index;
  };
  std::vector<Frame> stack{{e.p, e.w, 0}};
  while (!stack.empty()) {
    const auto [node, w, index] = stack.back();
    stack.pop_back();
    if (node->isTerminal()) {
      out[index] = w;
      continue;
    }
    for (std::size_t bit = 0; bit < 2; ++bit) {
      const auto& child = node->e[bit];
      if (!child.isZero()) {
        stack.push_back(
            {child.p, w * child.w,
             index | (bit << static_cast<std::size_t>(node->level))});
      }
    }
  }
  return out;
}

/// Dense row-major 2^n x 2^n matrix of an operator DD.
[[nodiscard]] inline std::vector<Complex> toMatrix(const mEdge& e,
                                                   std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> out(dim * dim, 0.);
  if (e.isZero()) {
    return out;
  }
  struct Frame {
    const mNode* node;
    Complex w;
    std::size_t row;
    std::size_t col;
  };
  std::vector<Frame> stack{{e.p, e.w, 0, 0}};
  while (!stack.empty()) {
    const auto [node, w, row, col] = stack.back();
    stack.pop_back();
    if (node->isTerminal()) {
      out[row * dim + col] = w;
      continue;
    }
    const auto shift = static_cast<std::size_t>(node->level);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const auto& child = node->e[2 * i + j];
        if (!child.isZero()) {
          stack.push_back({child.p, w * child.w, row | (i << shift),
                           col | (j << shift)});
        }
      }
    }
  }
  return out;
}

namespace detail {
inline std::string formatWeight(const Complex& w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g%+.4gi", w.real(), w.imag());
  return buf;
}
} // namespace detail

/// Graphviz rendering for debugging. Nodes are labelled by level, edges by
/// weight; zero stubs are drawn as small filled dots. Layout is unstable.
template <class NodeT>
[[nodiscard]] std::string toDot(const Edge<NodeT>& root) {
  std::ostringstream os;
  os << "digraph dd {\n  node [shape=circle];\n";
  os << "  root [shape=point, style=invis];\n";
  std::unordered_map<const NodeT*, std::size_t> ids;
  std::size_t stubs = 0;
  const auto idOf = [&](const NodeT* node) {
    const auto [it, inserted] = ids.emplace(node, ids.size());
    return std::pair{it->second, inserted};
  };
  const auto nodeName = [](const NodeT* node, std::size_t id) {
    return node->isTerminal() ? std::string("t") : "n" + std::to_string(id);
  };
  if (root.isZero()) {
    os << "  z0 [shape=point, style=filled, width=0.08];\n";
    os << "  root -> z0;\n}\n";
    return os.str();
  }
  std::vector<const NodeT*> stack;
  const auto [rootId, fresh] = idOf(root.p);
  if (fresh && !root.p->isTerminal()) {
    stack.push_back(root.p);
  }
  os << "  t [shape=box, label=\"1\"];\n";
  os << "  root -> " << nodeName(root.p, rootId) << " [label=\""
     << detail::formatWeight(root.w) << "\"];\n";
  while (!stack.empty()) {
    const NodeT* node = stack.back();
    stack.pop_back();
    const auto id = ids.at(node);
    os << "  n" << id << " [label=\"" << node->level << "\"];\n";
    for (std::size_t i = 0; i < NodeT::ARITY; ++i) {
      const auto& child = node->e[i];
      if (child.isZero()) {
        os << "  z" << stubs
           << " [shape=point, style=filled, width=0.08];\n  n" << id
           << " -> z" << stubs << " [taillabel=\"" << i << "\"];\n";
        ++stubs;
        continue;
      }
      const auto [childId, inserted] = idOf(child.p);
      if (inserted && !child.p->isTerminal()) {
        stack.push_back(child.p);
      }
      os << "  n" << id << " -> " << nodeName(child.p, childId)
         << " [taillabel=\"" << i << "\", label=\""
         << detail::formatWeight(child.w) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace ddpath::dd
