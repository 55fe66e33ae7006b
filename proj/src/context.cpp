#include "qdd/context.hpp"

#include <cmath>
#include <unordered_set>

namespace qdd {

Context::Context(std::size_t nqubits)
    : nqubits_(nqubits), gcThreshold_(kInitialGcThreshold) {
  if (nqubits < 1 || nqubits > static_cast<std::size_t>(kMaxQubits)) {
    throw StructureError("qubit count out of range");
  }
}

// --- construction ----------------------------------------------------------

namespace {
fp mag2(Complex w) { return w.re() * w.re() + w.im() * w.im(); }
} // namespace

template <class Node, std::size_t N>
Edge<Node> Context::makeNode(Qubit level,
                             const std::array<Edge<Node>, N>& children,
                             NodePool<Node>& pool, UniqueTable<Node>& table) {
  for (const auto& c : children) {
    if (!c.isTerminal() && c.node->level <= level) {
      throw StructureError("child level must be greater than node level");
    }
    if (c.isZero() && !c.isTerminal()) {
      throw StructureError("zero-weight edge must target the terminal");
    }
  }

  // pivot: largest weight magnitude, ties to the lowest child index
  int pivot = -1;
  fp best = -1.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (children[i].w.isZero()) {
      continue;
    }
    const fp m = mag2(children[i].w);
    if (m > best) {
      best = m;
      pivot = static_cast<int>(i);
    }
  }
  if (pivot < 0) {
    return {nullptr, czero()};
  }

  const auto pivotWeight = children[pivot].w;
  const auto pv = pivotWeight.value();

  Node* cand = pool.alloc();
  cand->level = level;
  for (std::size_t i = 0; i < N; ++i) {
    const auto& c = children[i];
    if (c.w.isZero()) {
      cand->e[i] = {nullptr, czero()};
    } else if (static_cast<int>(i) == pivot) {
      cand->e[i] = {c.node, cone()};
    } else {
      auto w = lookupComplex(c.w.value() / pv);
      // a ratio that snaps to zero collapses the child to a zero stub
      cand->e[i] = w.isZero() ? Edge<Node>{nullptr, czero()} : Edge<Node>{c.node, w};
    }
  }
  Node* node = table.lookupOrInsert(cand, pool);
  return {node, pivotWeight};
}

vEdge Context::makeVectorNode(Qubit level, const std::array<vEdge, 2>& children) {
  return makeNode<vNode, 2>(level, children, vPool_, vUnique_);
}

mEdge Context::makeMatrixNode(Qubit level, const std::array<mEdge, 4>& children) {
  return makeNode<mNode, 4>(level, children, mPool_, mUnique_);
}

// --- entry reconstruction ----------------------------------------------------

std::complex<fp> Context::amplitude(const vEdge& root,
                                    std::uint64_t index) const {
  if (index >= (std::uint64_t{1} << nqubits_)) {
    throw StructureError("basis index out of range");
  }
  std::complex<fp> acc = root.w.value();
  const vNode* p = root.node;
  while (p != nullptr) {
    const auto bit = (index >> (nqubits_ - 1 - static_cast<std::size_t>(p->level))) & 1U;
    const auto& e = p->e[bit];
    acc *= e.w.value();
    p = e.node;
  }
  return acc;
}

std::complex<fp> Context::entry(const mEdge& root, std::uint64_t row,
                                std::uint64_t col) const {
  const auto dim = std::uint64_t{1} << nqubits_;
  if (row >= dim || col >= dim) {
    throw StructureError("matrix index out of range");
  }
  std::complex<fp> acc = root.w.value();
  const mNode* p = root.node;
  while (p != nullptr) {
    const auto shift = nqubits_ - 1 - static_cast<std::size_t>(p->level);
    const auto r = (row >> shift) & 1U;
    const auto c = (col >> shift) & 1U;
    const auto& e = p->e[2 * r + c];
    acc *= e.w.value();
    p = e.node;
  }
  return acc;
}

namespace {
template <class Node>
void countNodes(const Node* p, std::unordered_set<const Node*>& seen) {
  if (p == nullptr || !seen.insert(p).second) {
    return;
  }
  for (const auto& c : p->e) {
    countNodes(c.node, seen);
  }
}
} // namespace

std::size_t Context::nodeCount(const vEdge& root) const {
  std::unordered_set<const vNode*> seen;
  countNodes(root.node, seen);
  return seen.size() + 1; // terminal
}

std::size_t Context::nodeCount(const mEdge& root) const {
  std::unordered_set<const mNode*> seen;
  countNodes(root.node, seen);
  return seen.size() + 1;
}

// --- lifetime ----------------------------------------------------------------

namespace {
template <class Node> void incRefNode(Node* p) {
  if (p == nullptr) {
    return;
  }
  ++p->ref;
  if (p->ref == 1) {
    for (auto& c : p->e) {
      incRefNode(c.node);
    }
  }
}

template <class Node> void decRefNode(Node* p) {
  if (p == nullptr) {
    return;
  }
  if (p->ref == 0) {
    throw LogicError("reference count underflow");
  }
  --p->ref;
  if (p->ref == 0) {
    for (auto& c : p->e) {
      decRefNode(c.node);
    }
  }
}
} // namespace

void Context::incRef(const vEdge& e) { incRefNode(e.node); }
void Context::incRef(const mEdge& e) { incRefNode(e.node); }
void Context::decRef(const vEdge& e) { decRefNode(e.node); }
void Context::decRef(const mEdge& e) { decRefNode(e.node); }

std::size_t Context::collectGarbage() {
  const auto freed = vUnique_.sweep(vPool_) + mUnique_.sweep(mPool_);
  vAddCache_.clear();
  mAddCache_.clear();
  mMultCache_.clear();
  mvMultCache_.clear();
  adjointCache_.clear();
  outerCache_.clear();
  innerCache_.clear();
  traceCache_.clear();
  ++gcRuns_;
  gcFreed_ += freed;
  return freed;
}

void Context::maybeCollect() {
  if (vPool_.live() + mPool_.live() <= gcThreshold_) {
    return;
  }
  collectGarbage();
  const auto live = vPool_.live() + mPool_.live();
  gcThreshold_ = std::max(kInitialGcThreshold, live * 2);
}

DDStats Context::stats() const {
  DDStats s = ops;
  s.currentNodes = vPool_.live() + mPool_.live();
  s.peakNodes = vPool_.peak() + mPool_.peak();
  s.uniqueTableLookups = vUnique_.lookups() + mUnique_.lookups();
  s.uniqueTableHits = vUnique_.hits() + mUnique_.hits();
  s.computeCacheHits = vAddCache_.hits() + mAddCache_.hits() +
                       mMultCache_.hits() + mvMultCache_.hits() +
                       adjointCache_.hits() + outerCache_.hits() +
                       innerCache_.hits() + traceCache_.hits();
  s.computeCacheMisses = vAddCache_.misses() + mAddCache_.misses() +
                         mMultCache_.misses() + mvMultCache_.misses() +
                         adjointCache_.misses() + outerCache_.misses() +
                         innerCache_.misses() + traceCache_.misses();
  s.gcRuns = gcRuns_;
  s.gcFreedNodes = gcFreed_;
  s.complexEntries = cxTable_.size();
  return s;
}

// --- weight arithmetic ---------------------------------------------------------

Complex Context::mulW(Complex a, Complex b) {
  if (a.isZero() || b.isZero()) {
    return czero();
  }
  if (a.isOne()) {
    return b;
  }
  if (b.isOne()) {
    return a;
  }
  return lookupComplex(a.value() * b.value());
}

Complex Context::addW(Complex a, Complex b) {
  if (a.isZero()) {
    return b;
  }
  if (b.isZero()) {
    return a;
  }
  return lookupComplex(a.value() + b.value());
}

Complex Context::conjW(Complex a) {
  if (a.im() == 0.0) {
    return a;
  }
  return lookupComplex(a.re(), -a.im());
}

} // namespace qdd
