#include "qdd/dense.hpp"

#include "qdd/errors.hpp"

namespace qdd {

std::size_t denseQubits(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) {
    ++n;
  }
  if ((std::size_t{1} << n) != dim || dim == 0) {
    throw StructureError("dense dimension must be a power of two");
  }
  if (n > kDenseMaxQubits) {
    throw StructureError("dense representation capped at 12 qubits");
  }
  return n;
}

CMat denseIdentity(std::size_t n) {
  CMat m(std::size_t{1} << n);
  for (std::size_t i = 0; i < m.dim; ++i) {
    m.at(i, i) = 1.0;
  }
  return m;
}

CVec denseMultiply(const CMat& m, const CVec& v) {
  if (m.dim != v.size()) {
    throw StructureError("dense multiply: dimension mismatch");
  }
  CVec r(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) {
    std::complex<fp> s{};
    for (std::size_t k = 0; k < m.dim; ++k) {
      s += m.at(i, k) * v[k];
    }
    r[i] = s;
  }
  return r;
}

CMat denseMultiply(const CMat& x, const CMat& y) {
  if (x.dim != y.dim) {
    throw StructureError("dense multiply: dimension mismatch");
  }
  CMat r(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i) {
    for (std::size_t k = 0; k < x.dim; ++k) {
      const auto xik = x.at(i, k);
      if (xik == std::complex<fp>{}) {
        continue;
      }
      for (std::size_t j = 0; j < x.dim; ++j) {
        r.at(i, j) += xik * y.at(k, j);
      }
    }
  }
  return r;
}

CMat denseAdd(const CMat& x, const CMat& y) {
  if (x.dim != y.dim) {
    throw StructureError("dense add: dimension mismatch");
  }
  CMat r(x.dim);
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    r.a[i] = x.a[i] + y.a[i];
  }
  return r;
}

CMat denseAdjoint(const CMat& m) {
  CMat r(m.dim);
  for (std::size_t i = 0; i < m.dim; ++i) {
    for (std::size_t j = 0; j < m.dim; ++j) {
      r.at(i, j) = std::conj(m.at(j, i));
    }
  }
  return r;
}

CMat denseOuter(const CVec& v) {
  CMat r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      r.at(i, j) = v[i] * std::conj(v[j]);
    }
  }
  return r;
}

CMat denseConjugate(const CMat& rho, const CMat& u) {
  return denseMultiply(u, denseMultiply(rho, denseAdjoint(u)));
}

CMat denseEmbedGate(const Mat2& g, Qubit target, const std::vector<Qubit>& controls,
                    std::size_t n) {
  const auto dim = std::size_t{1} << n;
  const auto shift = n - 1 - static_cast<std::size_t>(target);
  CMat m(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    bool active = true;
    for (const auto c : controls) {
      if (((col >> (n - 1 - static_cast<std::size_t>(c))) & 1U) == 0) {
        active = false;
        break;
      }
    }
    if (!active) {
      m.at(col, col) = 1.0;
      continue;
    }
    const auto b = (col >> shift) & 1U;
    const auto row0 = col & ~(std::size_t{1} << shift);
    const auto row1 = row0 | (std::size_t{1} << shift);
    m.at(row0, col) += g[b];
    m.at(row1, col) += g[2 + b];
  }
  return m;
}

CMat denseChannel(const CMat& rho, const std::vector<Mat2>& kraus, Qubit target) {
  const auto n = denseQubits(rho.dim);
  CMat sum(rho.dim);
  for (const auto& k : kraus) {
    const auto e = denseEmbedGate(k, target, {}, n);
    sum = denseAdd(sum, denseConjugate(rho, e));
  }
  return sum;
}

// --- bridges -----------------------------------------------------------------

namespace {
vEdge buildVec(Context& ctx, const CVec& v, Qubit level, std::size_t lo,
               std::size_t size) {
  if (size == 1) {
    return ctx.vTerminal(ctx.lookupComplex(v[lo]));
  }
  const auto half = size / 2;
  return ctx.makeVectorNode(level,
                            {buildVec(ctx, v, level + 1, lo, half),
                             buildVec(ctx, v, level + 1, lo + half, half)});
}

mEdge buildMat(Context& ctx, const CMat& m, Qubit level, std::size_t r0,
               std::size_t c0, std::size_t size) {
  if (size == 1) {
    return ctx.mTerminal(ctx.lookupComplex(m.at(r0, c0)));
  }
  const auto half = size / 2;
  return ctx.makeMatrixNode(
      level, {buildMat(ctx, m, level + 1, r0, c0, half),
              buildMat(ctx, m, level + 1, r0, c0 + half, half),
              buildMat(ctx, m, level + 1, r0 + half, c0, half),
              buildMat(ctx, m, level + 1, r0 + half, c0 + half, half)});
}
} // namespace

vEdge denseToDd(Context& ctx, const CVec& v) {
  if (denseQubits(v.size()) != ctx.qubits()) {
    throw StructureError("vector size does not match context qubit count");
  }
  return buildVec(ctx, v, 0, 0, v.size());
}

mEdge denseToDd(Context& ctx, const CMat& m) {
  if (denseQubits(m.dim) != ctx.qubits()) {
    throw StructureError("matrix size does not match context qubit count");
  }
  return buildMat(ctx, m, 0, 0, 0, m.dim);
}

CVec ddToDense(Context& ctx, const vEdge& e) {
  const auto dim = std::size_t{1} << ctx.qubits();
  CVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = ctx.amplitude(e, i);
  }
  return v;
}

CMat ddToDense(Context& ctx, const mEdge& e) {
  const auto dim = std::size_t{1} << ctx.qubits();
  CMat m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m.at(r, c) = ctx.entry(e, r, c);
    }
  }
  return m;
}

} // namespace qdd
