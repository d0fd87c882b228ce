#pragma once

#include "ddpath/circuit/gate.hpp"
#include "ddpath/dd/complex.hpp"
#include "ddpath/dd/compute_table.hpp"
#include "ddpath/dd/node.hpp"
#include "ddpath/dd/unique_table.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ddpath::dd {

struct PackageConfig {
  /// log2 of the number of slots in each compute table.
  std::size_t computeTableBits = 16;
  bool memoize = true;

  /// Defaults, with `computeTableBits` taken from DDPATH_TABLE_BITS when it
  /// holds an integer in [4, 28].
  [[nodiscard]] static PackageConfig fromEnvironment() {
    PackageConfig config;
    if (const char* env = std::getenv("DDPATH_TABLE_BITS"); env != nullptr) {
      char* end = nullptr;
      const long bits = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && bits >= 4 && bits <= 28) {
        config.computeTableBits = static_cast<std::size_t>(bits);
      }
    }
    return config;
  }
};

/// A decision-diagram kernel instance: unique tables, compute tables and the
/// weight table. Single-writer; edges must not cross instances.
///
/// Diagrams are not reduced: a DD over n qubits has nodes on every level
/// n-1 ... 0, and level z decides qubit z. Zero-weight successors point to
/// the terminal ("zero stub"). Every node is normalised so that its largest
/// successor weight is exactly 1, ties going to the lowest successor index.
class Package {
public:
  explicit Package(PackageConfig config = PackageConfig::fromEnvironment())
      : config_(config), vAdd_(config.computeTableBits),
        mAdd_(config.computeTableBits), mulMV_(config.computeTableBits),
        mulMM_(config.computeTableBits), transpose_(config.computeTableBits) {}

  Package(const Package&) = delete;
  Package& operator=(const Package&) = delete;

  // --- construction -------------------------------------------------------

  /// |0...0> over n qubits; exactly n nodes.
  [[nodiscard]] vEdge makeZeroState(std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("a state needs at least one qubit");
    }
    return makeBasisState(n, std::string(n, '0'));
  }

  /// Computational basis state; `bits` is written most-significant qubit
  /// first.
  [[nodiscard]] vEdge makeBasisState(std::size_t n, std::string_view bits) {
    if (n == 0) {
      throw std::invalid_argument("a state needs at least one qubit");
    }
    checkBasisString(bits, n);
    vEdge e = vEdge::one();
    for (std::size_t z = 0; z < n; ++z) {
      const bool one = bits[n - 1 - z] == '1';
      e = makeVectorNode(static_cast<Level>(z),
                         one ? std::array{vEdge::zero(), e}
                             : std::array{e, vEdge::zero()});
    }
    return e;
  }

  /// DD for an explicit amplitude vector of length 2^n (n >= 1).
  [[nodiscard]] vEdge makeStateFromVector(std::span<const Complex> amplitudes) {
    const std::size_t size = amplitudes.size();
    if (size < 2 || (size & (size - 1)) != 0) {
      throw std::invalid_argument(
          "amplitude vector length must be a power of two >= 2");
    }
    const auto n = static_cast<Level>(std::countr_zero(size));
    return buildVector(amplitudes, n - 1, 0);
  }

  [[nodiscard]] mEdge makeIdentity(std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("an operator needs at least one qubit");
    }
    return identity(static_cast<Level>(n) - 1);
  }

  /// DD of `gate` extended to n qubits (identity on untouched qubits).
  [[nodiscard]] mEdge makeGateDD(const qc::Gate& gate, std::size_t n) {
    checkGate(gate, n);
    if (gate.op == qc::OpType::SWAP) {
      // SWAP(a, b) = CX(b->a) CX(a->b) CX(b->a); extra controls only need to
      // guard the middle factor.
      const auto a = gate.targets[0];
      const auto b = gate.targets[1];
      auto middleControls = gate.controls;
      middleControls.push_back(a);
      const auto outer = makeGateDD(qc::cx(b, a), n);
      const auto middle =
          makeGateDD(qc::makeGate(qc::OpType::X, middleControls, {b}), n);
      return multiply(outer, multiply(middle, outer));
    }
    return buildControlledGate(gate.matrix(), gate.controls, gate.targets[0],
                               n);
  }

  /// Normalises `edges`, interns the weights and returns the canonical edge.
  [[nodiscard]] vEdge makeVectorNode(Level level,
                                     const std::array<vEdge, 2>& edges) {
    return makeNode(level, edges, vUnique_);
  }
  [[nodiscard]] mEdge makeMatrixNode(Level level,
                                     const std::array<mEdge, 4>& edges) {
    return makeNode(level, edges, mUnique_);
  }

  // --- arithmetic ---------------------------------------------------------

  [[nodiscard]] vEdge add(const vEdge& a, const vEdge& b) {
    checkSameLevel(a, b, "add");
    return addEdges(a, b);
  }
  [[nodiscard]] mEdge add(const mEdge& a, const mEdge& b) {
    checkSameLevel(a, b, "add");
    return addEdges(a, b);
  }

  [[nodiscard]] vEdge multiply(const mEdge& m, const vEdge& v) {
    if (m.isZero() || v.isZero()) {
      return vEdge::zero();
    }
    checkSameLevel(m, v, "multiply");
    return scaled(multiplyNodes(m.p, v.p), m.w * v.w);
  }

  [[nodiscard]] mEdge multiply(const mEdge& a, const mEdge& b) {
    if (a.isZero() || b.isZero()) {
      return mEdge::zero();
    }
    checkSameLevel(a, b, "multiply");
    return scaled(multiplyNodes(a.p, b.p), a.w * b.w);
  }

  [[nodiscard]] mEdge conjugateTranspose(const mEdge& m) {
    if (m.isZero()) {
      return m;
    }
    return scaled(transposeNode(m.p), std::conj(m.w));
  }

  /// Amplitude of `basis` (most-significant qubit first): product of the
  /// weights along the selected root-to-terminal path.
  [[nodiscard]] Complex getAmplitude(const vEdge& v,
                                     std::string_view basis) const {
    if (v.isZero()) {
      return 0.;
    }
    const auto n = static_cast<std::size_t>(v.level() + 1);
    checkBasisString(basis, n);
    Complex w = v.w;
    const vNode* node = v.p;
    while (!node->isTerminal()) {
      const auto bit = basis[n - 1 - static_cast<std::size_t>(node->level)];
      const auto& next = node->e[bit == '1' ? 1 : 0];
      if (next.isZero()) {
        return 0.;
      }
      w *= next.w;
      node = next.p;
    }
    return w;
  }

  /// <a|b>.
  [[nodiscard]] Complex innerProduct(const vEdge& a, const vEdge& b) {
    if (a.isZero() || b.isZero()) {
      return 0.;
    }
    checkSameLevel(a, b, "innerProduct");
    std::unordered_map<std::pair<const vNode*, const vNode*>, Complex, PairHash>
        memo;
    return std::conj(a.w) * b.w * innerProductNodes(a.p, b.p, memo);
  }

  /// |<a|b>|^2 for normalised states.
  [[nodiscard]] fp fidelity(const vEdge& a, const vEdge& b) {
    return std::norm(innerProduct(a, b));
  }

  // --- inspection ---------------------------------------------------------

  /// Number of distinct non-terminal nodes reachable from `e`.
  template <class NodeT>
  [[nodiscard]] static std::size_t nodeCount(const Edge<NodeT>& e) {
    if (e.isZero() || e.isTerminal()) {
      return 0;
    }
    std::unordered_set<const NodeT*> visited;
    std::vector<const NodeT*> stack{e.p};
    visited.insert(e.p);
    while (!stack.empty()) {
      const NodeT* node = stack.back();
      stack.pop_back();
      for (const auto& child : node->e) {
        if (!child.p->isTerminal() && visited.insert(child.p).second) {
          stack.push_back(child.p);
        }
      }
    }
    return visited.size();
  }

  [[nodiscard]] std::size_t liveNodeCount() const noexcept {
    return vUnique_.size() + mUnique_.size();
  }
  [[nodiscard]] std::size_t vectorNodeCount() const noexcept {
    return vUnique_.size();
  }
  [[nodiscard]] std::size_t matrixNodeCount() const noexcept {
    return mUnique_.size();
  }
  [[nodiscard]] std::size_t weightCount() const noexcept {
    return reals_.size();
  }
  [[nodiscard]] const PackageConfig& config() const noexcept { return config_; }

  // --- memory management --------------------------------------------------

  template <class NodeT> static void incRef(const Edge<NodeT>& e) {
    if (e.p == nullptr || e.p->isTerminal()) {
      return;
    }
    if (e.p->ref++ == 0) {
      for (const auto& child : e.p->e) {
        incRef(child);
      }
    }
  }

  template <class NodeT> static void decRef(const Edge<NodeT>& e) {
    if (e.p == nullptr || e.p->isTerminal()) {
      return;
    }
    if (e.p->ref == 0) {
      throw std::logic_error("reference count underflow");
    }
    if (--e.p->ref == 0) {
      for (const auto& child : e.p->e) {
        decRef(child);
      }
    }
  }

  /// Removes every node that is neither reachable from `vRoots`/`mRoots` nor
  /// held through a positive reference count. Compute-table entries are
  /// dropped whenever a node is reclaimed. Returns the number of reclaimed
  /// nodes.
  std::size_t garbageCollect(std::span<const vEdge> vRoots = {},
                             std::span<const mEdge> mRoots = {}) {
    for (const auto& r : vRoots) {
      markFrom(r);
    }
    for (const auto& r : mRoots) {
      markFrom(r);
    }
    const auto keep = [](const auto& node) { return node.ref > 0 || node.mark; };
    const std::size_t reclaimed = vUnique_.sweep(keep) + mUnique_.sweep(keep);
    vUnique_.forEach([](vNode& node) { node.mark = false; });
    mUnique_.forEach([](mNode& node) { node.mark = false; });
    if (reclaimed > 0) {
      clearComputeTables();
      identities_.clear();
      rebuildWeights(vRoots, mRoots);
    }
    return reclaimed;
  }

  void setMemoization(bool enabled) {
    config_.memoize = enabled;
    clearComputeTables();
  }
  [[nodiscard]] bool memoization() const noexcept { return config_.memoize; }

  void clearComputeTables() {
    vAdd_.clear();
    mAdd_.clear();
    mulMV_.clear();
    mulMM_.clear();
    transpose_.clear();
  }

  [[nodiscard]] Complex intern(const Complex& c) {
    if (approximatelyZero(c)) {
      return 0.;
    }
    return reals_.lookup(c);
  }

private:
  struct PairHash {
    template <class A, class B>
    std::size_t operator()(const std::pair<A, B>& p) const noexcept {
      return detail::combine(std::hash<A>{}(p.first), std::hash<B>{}(p.second));
    }
  };

  static void checkBasisString(std::string_view bits, std::size_t n) {
    if (bits.size() != n) {
      throw std::invalid_argument("basis string '" + std::string(bits) +
                                  "' has length " +
                                  std::to_string(bits.size()) + ", expected " +
                                  std::to_string(n));
    }
    if (bits.find_first_not_of("01") != std::string_view::npos) {
      throw std::invalid_argument("basis string '" + std::string(bits) +
                                  "' must consist of 0 and 1");
    }
  }

  static void checkGate(const qc::Gate& gate, std::size_t n) {
    if (n == 0) {
      throw std::invalid_argument("an operator needs at least one qubit");
    }
    if (gate.targets.size() != qc::targetCount(gate.op)) {
      throw std::invalid_argument("gate '" + gate.name() +
                                  "' has the wrong number of targets");
    }
    auto qubits = gate.support();
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if (qubits[i] >= n) {
        throw std::invalid_argument("gate '" + gate.name() + "' uses qubit " +
                                    std::to_string(qubits[i]) +
                                    " outside of a " + std::to_string(n) +
                                    "-qubit system");
      }
      if (i > 0 && qubits[i] == qubits[i - 1]) {
        throw std::invalid_argument("gate '" + gate.name() + "' uses qubit " +
                                    std::to_string(qubits[i]) + " twice");
      }
    }
  }

  template <class A, class B>
  static void checkSameLevel(const A& a, const B& b, const char* op) {
    if (a.isZero() || b.isZero()) {
      return;
    }
    if (a.level() != b.level()) {
      throw std::invalid_argument(std::string(op) +
                                  ": operands span different numbers of "
                                  "qubits (" +
                                  std::to_string(a.level() + 1) + " vs " +
                                  std::to_string(b.level() + 1) + ")");
    }
  }

  template <class NodeT>
  [[nodiscard]] Edge<NodeT> scaled(const Edge<NodeT>& e, const Complex& factor) {
    if (e.isZero()) {
      return e;
    }
    const Complex w = intern(e.w * factor);
    if (w == Complex{0., 0.}) {
      return Edge<NodeT>::zero();
    }
    return {e.p, w};
  }

  template <class NodeT>
  [[nodiscard]] Edge<NodeT>
  makeNode(Level level, std::array<Edge<NodeT>, NodeT::ARITY> edges,
           UniqueTable<NodeT>& table) {
    std::size_t best = NodeT::ARITY;
    fp bestMagnitude = 0.;
    for (std::size_t i = 0; i < NodeT::ARITY; ++i) {
      auto& e = edges[i];
      e.w = intern(e.w);
      if (e.isZero()) {
        e = Edge<NodeT>::zero();
        continue;
      }
      if (e.p->level != level - 1) {
        throw std::logic_error("successor on level " +
                               std::to_string(e.p->level) +
                               " below a node on level " +
                               std::to_string(level));
      }
      const fp magnitude = std::abs(e.w);
      if (best == NodeT::ARITY || magnitude > bestMagnitude + TOLERANCE) {
        best = i;
        bestMagnitude = magnitude;
      }
    }
    if (best == NodeT::ARITY) {
      return Edge<NodeT>::zero();
    }
    const Complex top = edges[best].w;
    for (std::size_t i = 0; i < NodeT::ARITY; ++i) {
      auto& e = edges[i];
      if (i == best) {
        e.w = 1.;
      } else if (!e.isZero()) {
        e.w = intern(e.w / top);
        if (e.isZero()) {
          e = Edge<NodeT>::zero();
        }
      }
    }
    NodeT candidate;
    candidate.level = level;
    candidate.e = edges;
    return {table.lookup(candidate), top};
  }

  vEdge buildVector(std::span<const Complex> amplitudes, Level level,
                    std::size_t offset) {
    if (level < 0) {
      return vEdge::terminal(intern(amplitudes[offset]));
    }
    const std::size_t half = std::size_t{1} << static_cast<std::size_t>(level);
    return makeVectorNode(level,
                          {buildVector(amplitudes, level - 1, offset),
                           buildVector(amplitudes, level - 1, offset + half)});
  }

  mEdge identity(Level top) {
    if (identities_.empty()) {
      identities_.push_back(mEdge::one());
    }
    while (static_cast<Level>(identities_.size()) <= top + 1) {
      const auto level = static_cast<Level>(identities_.size()) - 1;
      const auto below = identities_.back();
      identities_.push_back(makeMatrixNode(
          level, {below, mEdge::zero(), mEdge::zero(), below}));
    }
    return identities_[static_cast<std::size_t>(top + 1)];
  }

  // Builds C^k(U) bottom-up. Below the target, one partial edge per block
  // (i, j) of U is kept: block (i, j) restricted to "all lower controls set"
  // carries u_ij, otherwise it is delta_ij * I. Above the target the blocks
  // have been merged into a single edge.
  mEdge buildControlledGate(const qc::Matrix2& u,
                            const std::vector<qc::Qubit>& controls,
                            qc::Qubit target, std::size_t n) {
    const auto isControl = [&](std::size_t z) {
      return std::find(controls.begin(), controls.end(), z) != controls.end();
    };
    std::array<mEdge, 4> blocks{};
    for (std::size_t b = 0; b < 4; ++b) {
      blocks[b] = mEdge::terminal(intern(u[b]));
    }
    for (std::size_t z = 0; z < target; ++z) {
      const auto level = static_cast<Level>(z);
      for (std::size_t b = 0; b < 4; ++b) {
        const bool diagonal = b == 0 || b == 3;
        if (isControl(z)) {
          const auto idle = diagonal ? identity(level - 1) : mEdge::zero();
          blocks[b] = makeMatrixNode(
              level, {idle, mEdge::zero(), mEdge::zero(), blocks[b]});
        } else {
          blocks[b] = makeMatrixNode(
              level, {blocks[b], mEdge::zero(), mEdge::zero(), blocks[b]});
        }
      }
    }
    mEdge e = makeMatrixNode(static_cast<Level>(target), blocks);
    for (std::size_t z = target + 1; z < n; ++z) {
      const auto level = static_cast<Level>(z);
      if (isControl(z)) {
        e = makeMatrixNode(level,
                           {identity(level - 1), mEdge::zero(), mEdge::zero(), e});
      } else {
        e = makeMatrixNode(level, {e, mEdge::zero(), mEdge::zero(), e});
      }
    }
    return e;
  }

  template <class NodeT> auto& addTable() {
    if constexpr (NodeT::ARITY == 2) {
      return vAdd_;
    } else {
      return mAdd_;
    }
  }
  template <class NodeT> auto& uniqueTable() {
    if constexpr (NodeT::ARITY == 2) {
      return vUnique_;
    } else {
      return mUnique_;
    }
  }

  template <class NodeT>
  Edge<NodeT> addEdges(const Edge<NodeT>& a, const Edge<NodeT>& b) {
    if (a.isZero()) {
      return b;
    }
    if (b.isZero()) {
      return a;
    }
    if (a.p == b.p) {
      const Complex w = intern(a.w + b.w);
      if (w == Complex{0., 0.}) {
        return Edge<NodeT>::zero();
      }
      return {a.p, w};
    }
    auto& table = addTable<NodeT>();
    if (config_.memoize) {
      if (auto hit = table.lookup(a, b)) {
        return *hit;
      }
    }
    if (a.p->level != b.p->level) {
      throw std::logic_error("add: operand levels diverged");
    }
    std::array<Edge<NodeT>, NodeT::ARITY> r{};
    for (std::size_t i = 0; i < NodeT::ARITY; ++i) {
      r[i] = addEdges(scaled(a.p->e[i], a.w), scaled(b.p->e[i], b.w));
    }
    const auto result = makeNode(a.p->level, r, uniqueTable<NodeT>());
    if (config_.memoize) {
      table.insert(a, b, result);
    }
    return result;
  }

  vEdge multiplyNodes(mNode* m, vNode* v) {
    if (m->isTerminal()) {
      return vEdge::one();
    }
    if (config_.memoize) {
      if (auto hit = mulMV_.lookup(m, v)) {
        return *hit;
      }
    }
    std::array<vEdge, 2> r{vEdge::zero(), vEdge::zero()};
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < 2; ++k) {
        const auto& me = m->e[2 * i + k];
        const auto& ve = v->e[k];
        if (me.isZero() || ve.isZero()) {
          continue;
        }
        r[i] = addEdges(r[i], scaled(multiplyNodes(me.p, ve.p), me.w * ve.w));
      }
    }
    const auto result = makeVectorNode(m->level, r);
    if (config_.memoize) {
      mulMV_.insert(m, v, result);
    }
    return result;
  }

  mEdge multiplyNodes(mNode* a, mNode* b) {
    if (a->isTerminal()) {
      return mEdge::one();
    }
    if (config_.memoize) {
      if (auto hit = mulMM_.lookup(a, b)) {
        return *hit;
      }
    }
    std::array<mEdge, 4> r{mEdge::zero(), mEdge::zero(), mEdge::zero(),
                           mEdge::zero()};
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
          const auto& ae = a->e[2 * i + k];
          const auto& be = b->e[2 * k + j];
          if (ae.isZero() || be.isZero()) {
            continue;
          }
          r[2 * i + j] = addEdges(
              r[2 * i + j], scaled(multiplyNodes(ae.p, be.p), ae.w * be.w));
        }
      }
    }
    const auto result = makeMatrixNode(a->level, r);
    if (config_.memoize) {
      mulMM_.insert(a, b, result);
    }
    return result;
  }

  mEdge transposeNode(mNode* m) {
    if (m->isTerminal()) {
      return mEdge::one();
    }
    if (config_.memoize) {
      if (auto hit = transpose_.lookup(m, nullptr)) {
        return *hit;
      }
    }
    std::array<mEdge, 4> r{};
    constexpr std::array<std::size_t, 4> source{0, 2, 1, 3};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& e = m->e[source[i]];
      r[i] = e.isZero() ? mEdge::zero()
                        : scaled(transposeNode(e.p), std::conj(e.w));
    }
    const auto result = makeMatrixNode(m->level, r);
    if (config_.memoize) {
      transpose_.insert(m, nullptr, result);
    }
    return result;
  }

  Complex innerProductNodes(
      const vNode* a, const vNode* b,
      std::unordered_map<std::pair<const vNode*, const vNode*>, Complex,
                         PairHash>& memo) {
    if (a->isTerminal()) {
      return 1.;
    }
    if (const auto it = memo.find({a, b}); it != memo.end()) {
      return it->second;
    }
    Complex sum = 0.;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& ea = a->e[i];
      const auto& eb = b->e[i];
      if (ea.isZero() || eb.isZero()) {
        continue;
      }
      sum += std::conj(ea.w) * eb.w * innerProductNodes(ea.p, eb.p, memo);
    }
    memo.emplace(std::pair{a, b}, sum);
    return sum;
  }

  template <class NodeT> static void markFrom(const Edge<NodeT>& root) {
    if (root.isZero() || root.isTerminal() || root.p->mark) {
      return;
    }
    std::vector<NodeT*> stack{root.p};
    root.p->mark = true;
    while (!stack.empty()) {
      NodeT* node = stack.back();
      stack.pop_back();
      for (const auto& child : node->e) {
        if (!child.p->isTerminal() && !child.p->mark) {
          child.p->mark = true;
          stack.push_back(child.p);
        }
      }
    }
  }

  void rebuildWeights(std::span<const vEdge> vRoots,
                      std::span<const mEdge> mRoots) {
    reals_.clear();
    const auto registerWeight = [this](const Complex& w) {
      reals_.insertRepresentative(w.real());
      reals_.insertRepresentative(w.imag());
    };
    vUnique_.forEach([&](const vNode& node) {
      for (const auto& e : node.e) {
        registerWeight(e.w);
      }
    });
    mUnique_.forEach([&](const mNode& node) {
      for (const auto& e : node.e) {
        registerWeight(e.w);
      }
    });
    for (const auto& r : vRoots) {
      registerWeight(r.w);
    }
    for (const auto& r : mRoots) {
      registerWeight(r.w);
    }
  }

  PackageConfig config_;
  RealTable reals_;
  UniqueTable<vNode> vUnique_;
  UniqueTable<mNode> mUnique_;
  ComputeTable<vEdge, vEdge, vEdge> vAdd_;
  ComputeTable<mEdge, mEdge, mEdge> mAdd_;
  ComputeTable<mNode*, vNode*, vEdge> mulMV_;
  ComputeTable<mNode*, mNode*, mEdge> mulMM_;
  ComputeTable<mNode*, mNode*, mEdge> transpose_;
  std::vector<mEdge> identities_;
};

} // namespace ddpath::dd
