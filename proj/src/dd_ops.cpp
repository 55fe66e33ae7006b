#include "qdd/context.hpp"

#include <cmath>

namespace qdd {

// --- addition ----------------------------------------------------------------

namespace {
// commutative cache normalization: order operands by (node id, weight id)
template <class E> bool orderedAfter(const E& x, const E& y) {
  const auto xn = nodeId(x.node);
  const auto yn = nodeId(y.node);
  return xn > yn || (xn == yn && x.w.id() > y.w.id());
}
} // namespace

vEdge Context::add(const vEdge& x, const vEdge& y) { return add2(x, y); }
mEdge Context::add(const mEdge& x, const mEdge& y) { return add2(x, y); }

vEdge Context::add2(const vEdge& x, const vEdge& y) {
  if (x.isZero()) {
    return y;
  }
  if (y.isZero()) {
    return x;
  }
  if (x.isTerminal() && y.isTerminal()) {
    return vTerminal(addW(x.w, y.w));
  }
  if (x.isTerminal() || y.isTerminal()) {
    throw StructureError("add: operand height mismatch");
  }
  const auto* a = &x;
  const auto* b = &y;
  if (orderedAfter(x, y)) {
    std::swap(a, b);
  }
  const CacheKey4 key{nodeId(a->node), a->w.id(), nodeId(b->node), b->w.id()};
  if (const auto* hit = vAddCache_.lookup(key)) {
    return *hit;
  }
  if (a->node->level != b->node->level) {
    throw StructureError("add: operand level mismatch");
  }
  ++ops.addRecursions;
  std::array<vEdge, 2> r;
  for (std::size_t i = 0; i < 2; ++i) {
    const vEdge xi{a->node->e[i].node, mulW(a->w, a->node->e[i].w)};
    const vEdge yi{b->node->e[i].node, mulW(b->w, b->node->e[i].w)};
    r[i] = add2(xi, yi);
  }
  const auto res = makeVectorNode(a->node->level, r);
  vAddCache_.insert(key, res);
  return res;
}

mEdge Context::add2(const mEdge& x, const mEdge& y) {
  if (x.isZero()) {
    return y;
  }
  if (y.isZero()) {
    return x;
  }
  if (x.isTerminal() && y.isTerminal()) {
    return mTerminal(addW(x.w, y.w));
  }
  if (x.isTerminal() || y.isTerminal()) {
    throw StructureError("add: operand height mismatch");
  }
  const auto* a = &x;
  const auto* b = &y;
  if (orderedAfter(x, y)) {
    std::swap(a, b);
  }
  const CacheKey4 key{nodeId(a->node), a->w.id(), nodeId(b->node), b->w.id()};
  if (const auto* hit = mAddCache_.lookup(key)) {
    return *hit;
  }
  if (a->node->level != b->node->level) {
    throw StructureError("add: operand level mismatch");
  }
  ++ops.addRecursions;
  std::array<mEdge, 4> r;
  for (std::size_t i = 0; i < 4; ++i) {
    const mEdge xi{a->node->e[i].node, mulW(a->w, a->node->e[i].w)};
    const mEdge yi{b->node->e[i].node, mulW(b->w, b->node->e[i].w)};
    r[i] = add2(xi, yi);
  }
  const auto res = makeMatrixNode(a->node->level, r);
  mAddCache_.insert(key, res);
  return res;
}

// --- multiplication -------------------------------------------------------------

mEdge Context::multiply(const mEdge& x, const mEdge& y) {
  if (x.isZero() || y.isZero()) {
    return mZero();
  }
  return scale(multiplyNodes(x.node, y.node), mulW(x.w, y.w));
}

vEdge Context::multiply(const mEdge& m, const vEdge& v) {
  if (m.isZero() || v.isZero()) {
    return vZero();
  }
  return scale(multiplyNodes(m.node, v.node), mulW(m.w, v.w));
}

// weight-1 product of two matrix nodes
mEdge Context::multiplyNodes(const mNode* x, const mNode* y) {
  if (x == nullptr && y == nullptr) {
    return mTerminal(cone());
  }
  if (x == nullptr || y == nullptr || x->level != y->level) {
    throw StructureError("multiply: operand level mismatch");
  }
  const CacheKey2 key{x->id, y->id};
  if (const auto* hit = mMultCache_.lookup(key)) {
    return *hit;
  }
  ++ops.multRecursions;
  std::array<mEdge, 4> r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      mEdge sum = mZero();
      for (std::size_t k = 0; k < 2; ++k) {
        const auto& a = x->e[2 * i + k];
        const auto& b = y->e[2 * k + j];
        if (a.w.isZero() || b.w.isZero()) {
          continue; // sparse operands keep in-multiplication additions cheap
        }
        const auto term = scale(multiplyNodes(a.node, b.node), mulW(a.w, b.w));
        sum = sum.isZero() ? term : add2(sum, term);
      }
      r[2 * i + j] = sum;
    }
  }
  const auto res = makeMatrixNode(x->level, r);
  mMultCache_.insert(key, res);
  return res;
}

vEdge Context::multiplyNodes(const mNode* m, const vNode* v) {
  if (m == nullptr && v == nullptr) {
    return vTerminal(cone());
  }
  if (m == nullptr || v == nullptr || m->level != v->level) {
    throw StructureError("multiply: operand level mismatch");
  }
  const CacheKey2 key{m->id, v->id};
  if (const auto* hit = mvMultCache_.lookup(key)) {
    return *hit;
  }
  ++ops.multRecursions;
  std::array<vEdge, 2> r;
  for (std::size_t i = 0; i < 2; ++i) {
    vEdge sum = vZero();
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& a = m->e[2 * i + k];
      const auto& b = v->e[k];
      if (a.w.isZero() || b.w.isZero()) {
        continue;
      }
      const auto term = scale(multiplyNodes(a.node, b.node), mulW(a.w, b.w));
      sum = sum.isZero() ? term : add2(sum, term);
    }
    r[i] = sum;
  }
  const auto res = makeVectorNode(m->level, r);
  mvMultCache_.insert(key, res);
  return res;
}

// --- adjoint, scaling ---------------------------------------------------------

mEdge Context::adjoint(const mEdge& x) {
  if (x.isZero()) {
    return mZero();
  }
  return scale(adjointNode(x.node), conjW(x.w));
}

mEdge Context::adjointNode(const mNode* p) {
  if (p == nullptr) {
    return mTerminal(cone());
  }
  const CacheKey2 key{p->id, 0};
  if (const auto* hit = adjointCache_.lookup(key)) {
    return *hit;
  }
  std::array<mEdge, 4> r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& c = p->e[2 * j + i]; // transpose: swap b and c
      r[2 * i + j] = c.w.isZero() ? mZero() : scale(adjointNode(c.node), conjW(c.w));
    }
  }
  const auto res = makeMatrixNode(p->level, r);
  adjointCache_.insert(key, res);
  return res;
}

vEdge Context::scale(const vEdge& x, Complex s) {
  const auto w = mulW(x.w, s);
  if (w.isZero()) {
    return vZero();
  }
  return {x.node, w};
}

mEdge Context::scale(const mEdge& x, Complex s) {
  const auto w = mulW(x.w, s);
  if (w.isZero()) {
    return mZero();
  }
  return {x.node, w};
}

// --- gate embedding -------------------------------------------------------------

namespace {
void checkUnitary2x2(const Mat2& u) {
  // U^dagger U == I, componentwise within kEps
  const auto a = u[0];
  const auto b = u[1];
  const auto c = u[2];
  const auto d = u[3];
  const std::complex<fp> g00 = std::conj(a) * a + std::conj(c) * c;
  const std::complex<fp> g01 = std::conj(a) * b + std::conj(c) * d;
  const std::complex<fp> g11 = std::conj(b) * b + std::conj(d) * d;
  if (std::abs(g00 - 1.0) > kEps || std::abs(g11 - 1.0) > kEps ||
      std::abs(g01) > kEps) {
    throw NumericError("gate matrix flagged unitary is not unitary");
  }
}
} // namespace

mEdge Context::identityBelow(Qubit level) {
  const auto n = static_cast<Qubit>(nqubits_);
  if (level < 0 || level > n) {
    throw StructureError("identity level out of range");
  }
  auto e = mTerminal(cone());
  for (Qubit v = n - 1; v >= level; --v) {
    e = makeMatrixNode(v, {e, mZero(), mZero(), e});
  }
  return e;
}

mEdge Context::embedGate(const GateMatrix& g, Qubit target,
                         const std::vector<Qubit>& controls) {
  const auto n = static_cast<Qubit>(nqubits_);
  if (target < 0 || target >= n) {
    throw StructureError("gate target out of range");
  }
  std::vector<bool> isControl(nqubits_, false);
  for (const auto c : controls) {
    if (c < 0 || c >= n) {
      throw StructureError("gate control out of range");
    }
    if (c == target || isControl[static_cast<std::size_t>(c)]) {
      throw StructureError("gate targets and controls must be distinct");
    }
    isControl[static_cast<std::size_t>(c)] = true;
  }
  if (g.unitary) {
    checkUnitary2x2(g.m);
  }

  // em[k] is the sub-operator below the target for the k-th entry of the
  // target's 2x2 block decomposition
  std::array<mEdge, 4> em;
  for (std::size_t k = 0; k < 4; ++k) {
    em[k] = mTerminal(lookupComplex(g.m[k]));
  }
  for (Qubit v = n - 1; v > target; --v) {
    if (isControl[static_cast<std::size_t>(v)]) {
      const auto idBelow = identityBelow(v + 1);
      for (std::size_t k = 0; k < 4; ++k) {
        const auto diag = (k == 0 || k == 3) ? idBelow : mZero();
        em[k] = makeMatrixNode(v, {diag, mZero(), mZero(), em[k]});
      }
    } else {
      for (std::size_t k = 0; k < 4; ++k) {
        em[k] = makeMatrixNode(v, {em[k], mZero(), mZero(), em[k]});
      }
    }
  }
  auto e = makeMatrixNode(target, em);
  for (Qubit v = target - 1; v >= 0; --v) {
    if (isControl[static_cast<std::size_t>(v)]) {
      e = makeMatrixNode(v, {identityBelow(v + 1), mZero(), mZero(), e});
    } else {
      e = makeMatrixNode(v, {e, mZero(), mZero(), e});
    }
  }
  return e;
}

// --- outer/inner products, trace --------------------------------------------------

mEdge Context::outerProduct(const vEdge& x, const vEdge& y) {
  if (x.isZero() || y.isZero()) {
    return mZero();
  }
  return scale(outerNodes(x.node, y.node), mulW(x.w, conjW(y.w)));
}

mEdge Context::outerNodes(const vNode* x, const vNode* y) {
  if (x == nullptr && y == nullptr) {
    return mTerminal(cone());
  }
  if (x == nullptr || y == nullptr || x->level != y->level) {
    throw StructureError("outer product: operand level mismatch");
  }
  const CacheKey2 key{x->id, y->id};
  if (const auto* hit = outerCache_.lookup(key)) {
    return *hit;
  }
  std::array<mEdge, 4> r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& a = x->e[i];
      const auto& b = y->e[j];
      if (a.w.isZero() || b.w.isZero()) {
        r[2 * i + j] = mZero();
      } else {
        r[2 * i + j] =
            scale(outerNodes(a.node, b.node), mulW(a.w, conjW(b.w)));
      }
    }
  }
  const auto res = makeMatrixNode(x->level, r);
  outerCache_.insert(key, res);
  return res;
}

std::complex<fp> Context::innerProduct(const vEdge& x, const vEdge& y) {
  if (x.isZero() || y.isZero()) {
    return {0.0, 0.0};
  }
  return std::conj(x.w.value()) * y.w.value() * innerNodes(x.node, y.node);
}

std::complex<fp> Context::innerNodes(const vNode* x, const vNode* y) {
  if (x == nullptr && y == nullptr) {
    return {1.0, 0.0};
  }
  if (x == nullptr || y == nullptr || x->level != y->level) {
    throw StructureError("inner product: operand level mismatch");
  }
  const CacheKey2 key{x->id, y->id};
  if (const auto* hit = innerCache_.lookup(key)) {
    return *hit;
  }
  std::complex<fp> sum{0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& a = x->e[i];
    const auto& b = y->e[i];
    if (a.w.isZero() || b.w.isZero()) {
      continue;
    }
    sum += std::conj(a.w.value()) * b.w.value() * innerNodes(a.node, b.node);
  }
  innerCache_.insert(key, sum);
  return sum;
}

std::complex<fp> Context::traceOf(const mEdge& root) {
  if (root.isZero()) {
    return {0.0, 0.0};
  }
  return root.w.value() * traceNode(root.node);
}

std::complex<fp> Context::traceNode(const mNode* p) {
  if (p == nullptr) {
    return {1.0, 0.0};
  }
  const CacheKey2 key{p->id, 0};
  if (const auto* hit = traceCache_.lookup(key)) {
    return *hit;
  }
  std::complex<fp> sum{0.0, 0.0};
  for (const std::size_t i : {std::size_t{0}, std::size_t{3}}) {
    const auto& c = p->e[i];
    if (!c.w.isZero()) {
      sum += c.w.value() * traceNode(c.node);
    }
  }
  traceCache_.insert(key, sum);
  return sum;
}

} // namespace qdd
