#pragma once

#include "qdd/complex_table.hpp"
#include "qdd/edge.hpp"
#include "qdd/errors.hpp"
#include "qdd/tables.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace qdd {

/// Single-qubit gate matrix plus a unitarity tag. Kraus operators reuse the
/// same carrier with unitary = false.
struct GateMatrix {
  Mat2 m;
  bool unitary = true;
};

/// One simulation = one Context. Owns the canonical complex table, the
/// unique tables for vector and matrix nodes, the compute caches, and the
/// reference-counted node lifetime. Strictly single-threaded; run independent
/// simulations in independent contexts.
class Context {
public:
  static constexpr Qubit kMaxQubits = 48;

  explicit Context(std::size_t nqubits);
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  [[nodiscard]] std::size_t qubits() const { return nqubits_; }

  // --- canonical complex numbers ------------------------------------------

  Complex lookupComplex(fp re, fp im) { return cxTable_.lookup(re, im); }
  Complex lookupComplex(const std::complex<fp>& c) { return cxTable_.lookup(c); }
  [[nodiscard]] Complex czero() const { return cxTable_.zero(); }
  [[nodiscard]] Complex cone() const { return cxTable_.one(); }

  // --- edges and node construction ----------------------------------------

  [[nodiscard]] vEdge vZero() const { return {nullptr, czero()}; }
  [[nodiscard]] mEdge mZero() const { return {nullptr, czero()}; }
  [[nodiscard]] vEdge vTerminal(Complex w) const { return {nullptr, w}; }
  [[nodiscard]] mEdge mTerminal(Complex w) const { return {nullptr, w}; }

  /// Normalized, hash-consed vector node. The child of largest weight
  /// magnitude (ties: lowest index) becomes the pivot; its weight is factored
  /// into the returned edge and replaced by canonical one.
  vEdge makeVectorNode(Qubit level, const std::array<vEdge, 2>& children);

  /// Matrix analogue; children in block order (a, b, c, d).
  mEdge makeMatrixNode(Qubit level, const std::array<mEdge, 4>& children);

  // --- entry reconstruction -----------------------------------------------

  /// Amplitude of |index> as the product of edge weights along the path.
  [[nodiscard]] std::complex<fp> amplitude(const vEdge& root,
                                           std::uint64_t index) const;

  /// Matrix entry (row, col); the child at each level is selected by the
  /// (row bit, col bit) pair.
  [[nodiscard]] std::complex<fp> entry(const mEdge& root, std::uint64_t row,
                                       std::uint64_t col) const;

  /// Number of nodes in the DD, terminal included.
  [[nodiscard]] std::size_t nodeCount(const vEdge& root) const;
  [[nodiscard]] std::size_t nodeCount(const mEdge& root) const;

  // --- lifetime ------------------------------------------------------------

  void incRef(const vEdge& e);
  void incRef(const mEdge& e);
  void decRef(const vEdge& e);
  void decRef(const mEdge& e);

  /// Sweep dead nodes from both unique tables and drop all compute-cache
  /// entries. Returns the number of nodes freed.
  std::size_t collectGarbage();

  /// Run collectGarbage() when the live node count exceeds the adaptive
  /// threshold. Only call at points where every live DD is referenced.
  void maybeCollect();

  [[nodiscard]] DDStats stats() const;

  // --- algebra (dd_ops) -----------------------------------------------------

  vEdge add(const vEdge& x, const vEdge& y);
  mEdge add(const mEdge& x, const mEdge& y);
  mEdge multiply(const mEdge& x, const mEdge& y);
  vEdge multiply(const mEdge& m, const vEdge& v);
  mEdge adjoint(const mEdge& x);
  vEdge scale(const vEdge& x, Complex s);
  mEdge scale(const mEdge& x, Complex s);

  /// n-qubit operator DD for a (multi-)controlled single-qubit gate extended
  /// with identities on the remaining qubits.
  mEdge embedGate(const GateMatrix& g, Qubit target,
                  const std::vector<Qubit>& controls);

  /// Identity operator on levels [level, n); level == n gives the terminal.
  mEdge identityBelow(Qubit level);
  mEdge identity() { return identityBelow(0); }

  /// |x><y| (outer product of vector DDs).
  mEdge outerProduct(const vEdge& x, const vEdge& y);

  /// <x|y> (left argument conjugated).
  std::complex<fp> innerProduct(const vEdge& x, const vEdge& y);

  /// Trace of a matrix DD, following diagonal children only.
  std::complex<fp> traceOf(const mEdge& root);

  // --- weight arithmetic ----------------------------------------------------

  Complex mulW(Complex a, Complex b);
  Complex addW(Complex a, Complex b);
  Complex conjW(Complex a);

  // instrumentation counters maintained by the operations above and by the
  // noise module
  DDStats ops;

private:
  template <class Node, std::size_t N>
  Edge<Node> makeNode(Qubit level, const std::array<Edge<Node>, N>& children,
                      NodePool<Node>& pool, UniqueTable<Node>& table);

  vEdge add2(const vEdge& x, const vEdge& y);
  mEdge add2(const mEdge& x, const mEdge& y);
  mEdge multiplyNodes(const mNode* x, const mNode* y);
  vEdge multiplyNodes(const mNode* m, const vNode* v);
  mEdge adjointNode(const mNode* p);
  mEdge outerNodes(const vNode* x, const vNode* y);
  std::complex<fp> innerNodes(const vNode* x, const vNode* y);
  std::complex<fp> traceNode(const mNode* p);

  std::size_t nqubits_;
  ComplexTable cxTable_;

  NodePool<vNode> vPool_;
  NodePool<mNode> mPool_;
  UniqueTable<vNode> vUnique_;
  UniqueTable<mNode> mUnique_;

  ComputeCache<CacheKey4, vEdge> vAddCache_;
  ComputeCache<CacheKey4, mEdge> mAddCache_;
  ComputeCache<CacheKey2, mEdge> mMultCache_;
  ComputeCache<CacheKey2, vEdge> mvMultCache_;
  ComputeCache<CacheKey2, mEdge> adjointCache_;
  ComputeCache<CacheKey2, mEdge> outerCache_;
  ComputeCache<CacheKey2, std::complex<fp>> innerCache_;
  ComputeCache<CacheKey2, std::complex<fp>> traceCache_;

  std::size_t gcThreshold_;
  std::size_t gcRuns_ = 0;
  std::size_t gcFreed_ = 0;

  static constexpr std::size_t kInitialGcThreshold = 1U << 18U;
};

} // namespace qdd
