#include "qdd/density.hpp"

#include "qdd/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace qdd {

vEdge basisVector(Context& ctx, std::uint64_t basis) {
  const auto n = ctx.qubits();
  if (basis >= (std::uint64_t{1} << n)) {
    throw StructureError("basis state out of range");
  }
  auto e = ctx.vTerminal(ctx.cone());
  for (auto level = static_cast<Qubit>(n) - 1; level >= 0; --level) {
    const auto bit = (basis >> (n - 1 - static_cast<std::size_t>(level))) & 1U;
    std::array<vEdge, 2> kids{ctx.vZero(), ctx.vZero()};
    kids[bit] = e;
    e = ctx.makeVectorNode(level, kids);
  }
  return e;
}

DensityState::DensityState(Context& ctx, const mEdge& root, bool addRef)
    : ctx_(&ctx), root_(root) {
  if (addRef) {
    ctx_->incRef(root_);
  }
}

DensityState::DensityState(Context& ctx, const vEdge& pure) : ctx_(&ctx) {
  const auto norm = ctx.innerProduct(pure, pure);
  if (std::abs(norm.imag()) > kEps ||
      std::abs(norm.real() - 1.0) > kStateNormTolerance) {
    throw InvariantError("pure state is not normalized");
  }
  auto v = pure;
  if (norm.real() != 1.0) {
    v = ctx.scale(pure, ctx.lookupComplex(1.0 / std::sqrt(norm.real()), 0.0));
  }
  root_ = ctx.outerProduct(v, v);
  ctx_->incRef(root_);
}

DensityState DensityState::fromBasis(Context& ctx, std::uint64_t basis) {
  return DensityState(ctx, basisVector(ctx, basis));
}

DensityState::DensityState(const DensityState& other)
    : ctx_(other.ctx_), root_(other.root_) {
  ctx_->incRef(root_);
}

DensityState& DensityState::operator=(const DensityState& other) {
  if (this != &other) {
    other.ctx_->incRef(other.root_);
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
  }
  return *this;
}

DensityState::DensityState(DensityState&& other) noexcept
    : ctx_(other.ctx_), root_(other.root_) {
  other.root_ = other.ctx_->mZero(); // terminal: safe to deref
}

DensityState& DensityState::operator=(DensityState&& other) noexcept {
  if (this != &other) {
    ctx_->decRef(root_);
    ctx_ = other.ctx_;
    root_ = other.root_;
    other.root_ = other.ctx_->mZero();
  }
  return *this;
}

DensityState::~DensityState() { ctx_->decRef(root_); }

void DensityState::setRoot(const mEdge& newRoot) {
  ctx_->incRef(newRoot);
  ctx_->decRef(root_);
  root_ = newRoot;
}

void DensityState::applyUnitary(const mEdge& u) {
  const auto tmp = ctx_->multiply(u, root_);
  setRoot(ctx_->multiply(tmp, ctx_->adjoint(u)));
}

fp DensityState::trace() const {
  const auto t = ctx_->traceOf(root_);
  if (std::abs(t.imag()) > kEps) {
    throw InvariantError("trace has a non-negligible imaginary part");
  }
  return t.real();
}

namespace {
void walkDiagonal(std::size_t n, const mEdge& e, std::uint64_t base,
                  std::complex<fp> acc, std::vector<fp>& out) {
  if (e.w.isZero()) {
    return;
  }
  acc *= e.w.value();
  if (e.isTerminal()) {
    if (std::abs(acc.imag()) > kEps) {
      throw InvariantError("diagonal entry has a non-negligible imaginary part");
    }
    fp p = acc.real();
    if (p < -kEps) {
      throw InvariantError("diagonal entry below -eps");
    }
    out[base] = std::min(std::max(p, 0.0), 1.0);
    return;
  }
  const auto shift = n - 1 - static_cast<std::size_t>(e.node->level);
  walkDiagonal(n, e.node->e[0], base, acc, out);
  walkDiagonal(n, e.node->e[3], base | (std::uint64_t{1} << shift), acc, out);
}
} // namespace

std::vector<fp> DensityState::diagonal() const {
  const auto n = qubits();
  if (n > 30) {
    throw StructureError("full diagonal extraction capped at 30 qubits");
  }
  std::vector<fp> out(std::size_t{1} << n, 0.0);
  walkDiagonal(n, root_, 0, {1.0, 0.0}, out);
  return out;
}

std::map<std::uint64_t, std::uint64_t>
DensityState::sample(std::uint64_t shots, std::uint64_t seed) const {
  if (shots < 1) {
    throw StructureError("sample requires at least one shot");
  }
  const auto diag = diagonal();
  std::vector<fp> cdf(diag.size());
  fp total = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    total += diag[i];
    cdf[i] = total;
  }
  if (total <= 0.0) {
    throw InvariantError("cannot sample from an all-zero diagonal");
  }

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53-bit mantissa draw: platform-stable, unlike distribution adapters
    const fp u = static_cast<fp>(rng() >> 11U) * 0x1.0p-53 * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    ++hist[idx];
  }
  return hist;
}

fp DensityState::fidelity(const vEdge& ideal) const {
  const auto rhoIdeal = ctx_->multiply(root_, ideal);
  const auto f = ctx_->innerProduct(ideal, rhoIdeal);
  if (std::abs(f.imag()) > kEps) {
    throw InvariantError("fidelity has a non-negligible imaginary part");
  }
  const auto re = f.real();
  if (re < -kEps || re > 1.0 + kEps) {
    throw InvariantError("fidelity outside [0, 1]");
  }
  return std::min(std::max(re, 0.0), 1.0);
}

} // namespace qdd
