#pragma once

#include "qdd/context.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace qdd {

/// Dense reference implementation. Explicit 2^n vectors and 2^n x 2^n
/// matrices, direct formula transcription, no tricks; used as the ground
/// truth the DD paths are checked against. Capped at 12 qubits.
inline constexpr std::size_t kDenseMaxQubits = 12;

using CVec = std::vector<std::complex<fp>>;

struct CMat {
  std::size_t dim = 0;
  std::vector<std::complex<fp>> a;

  CMat() = default;
  explicit CMat(std::size_t d) : dim(d), a(d * d) {}

  std::complex<fp>& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  [[nodiscard]] const std::complex<fp>& at(std::size_t r, std::size_t c) const {
    return a[r * dim + c];
  }
};

std::size_t denseQubits(std::size_t dim); // log2, validates power of two + cap

CMat denseIdentity(std::size_t n);
CVec denseMultiply(const CMat& m, const CVec& v);
CMat denseMultiply(const CMat& x, const CMat& y);
CMat denseAdd(const CMat& x, const CMat& y);
CMat denseAdjoint(const CMat& m);
CMat denseOuter(const CVec& v);

/// U rho U^dagger
CMat denseConjugate(const CMat& rho, const CMat& u);

/// Controlled single-qubit gate extended with identities; qubit 0 is the
/// most significant bit of the basis index.
CMat denseEmbedGate(const Mat2& g, Qubit target, const std::vector<Qubit>& controls,
                    std::size_t n);

/// sum_i E_i rho E_i^dagger with each 2x2 Kraus matrix embedded on `target`.
CMat denseChannel(const CMat& rho, const std::vector<Mat2>& kraus, Qubit target);

// bridges between the oracle and the DD kernel
vEdge denseToDd(Context& ctx, const CVec& v);
mEdge denseToDd(Context& ctx, const CMat& m);
CVec ddToDense(Context& ctx, const vEdge& e);
CMat ddToDense(Context& ctx, const mEdge& e);

} // namespace qdd
