#pragma once

#include "qdd/context.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace qdd {

/// Accepted drift of sum |amplitude|^2 from 1 for pure_to_density inputs.
/// Looser than kEps because canonical snapping of every edge weight lets the
/// norm of a converted random vector drift by a few times kEps; the input is
/// rescaled to unit norm on acceptance.
inline constexpr fp kStateNormTolerance = 1e-6;

/// Density matrix state: a matrix DD root plus its owning context. Value
/// semantics; copies share the DD and bump reference counts.
class DensityState {
public:
  /// Rank-1 density matrix |v><v| of a normalized state vector.
  /// Throws InvariantError if the squared norm is off by more than
  /// kStateNormTolerance.
  DensityState(Context& ctx, const vEdge& pure);

  /// rho = |basis><basis|
  static DensityState fromBasis(Context& ctx, std::uint64_t basis);

  DensityState(const DensityState& other);
  DensityState& operator=(const DensityState& other);
  DensityState(DensityState&& other) noexcept;
  DensityState& operator=(DensityState&& other) noexcept;
  ~DensityState();

  [[nodiscard]] Context& context() const { return *ctx_; }
  [[nodiscard]] const mEdge& root() const { return root_; }
  [[nodiscard]] std::size_t qubits() const { return ctx_->qubits(); }

  /// Replace the root edge (refs the new DD, derefs the old one).
  void setRoot(const mEdge& newRoot);

  /// rho' = U rho U^dagger
  void applyUnitary(const mEdge& u);

  /// Real trace; asserts the imaginary part is below kEps.
  [[nodiscard]] fp trace() const;

  /// Measurement probabilities: the real diagonal, clamped to [0, 1] after
  /// tolerance checks. Only diagonal children are traversed.
  [[nodiscard]] std::vector<fp> diagonal() const;

  /// Deterministic measurement sampling: std::mt19937_64 seeded with `seed`,
  /// 53-bit uniform draws, inverse-CDF over the diagonal normalized by the
  /// trace. Identical (state, shots, seed) give identical histograms.
  [[nodiscard]] std::map<std::uint64_t, std::uint64_t>
  sample(std::uint64_t shots, std::uint64_t seed) const;

  /// <ideal| rho |ideal>, validated real and within [0, 1] up to kEps.
  [[nodiscard]] fp fidelity(const vEdge& ideal) const;

private:
  DensityState(Context& ctx, const mEdge& root, bool addRef);

  Context* ctx_;
  mEdge root_;
};

/// Basis-state vector DD |basis> for the context's qubit count.
vEdge basisVector(Context& ctx, std::uint64_t basis);

} // namespace qdd
