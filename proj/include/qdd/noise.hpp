#pragma once

#include "qdd/density.hpp"

#include <vector>

namespace qdd {

enum class ChannelKind { T1, T2 };

/// Single-qubit decoherence channel in operator-sum form.
struct KrausChannel {
  ChannelKind kind;
  fp p = 0.0;
  std::vector<Mat2> matrices;
};

/// Per-qubit-use error probabilities. t1p/t2p feed the channel constructors
/// directly; a disabled channel is skipped entirely.
struct NoiseParams {
  fp t1p = 0.0;
  fp t2p = 0.0;
  bool t1Enabled = false;
  bool t2Enabled = false;

  [[nodiscard]] bool any() const { return t1Enabled || t2Enabled; }
};

/// Amplitude damping: E0 = [[1,0],[0,sqrt(1-p)]], E1 = [[0,sqrt(p)],[0,0]].
KrausChannel krausT1(fp p);

/// Phase flip: E0 = sqrt(p)*I, E1 = sqrt(1-p)*diag(1,-1). With this
/// parameterization p = 1 is the identity channel and the off-diagonal
/// blocks scale by 2p-1.
KrausChannel krausT2(fp p);

struct ChannelValidation {
  bool pass = false;
  fp residual = 0.0; // max |(sum E^dagger E - I)_jk|
};

/// Kraus completeness check: sum_i E_i^dagger E_i == I within kEps.
ChannelValidation validateChannel(const KrausChannel& c);

/// rho' = sum_i E_i rho E_i^dagger with each Kraus matrix embedded on
/// `target`; accumulated with full-DD additions.
void applyChannelNaive(DensityState& rho, const KrausChannel& c, Qubit target);

/// Node-local amplitude damping: one traversal; nodes at the target level map
/// children (a,b,c,d) to (a + p*d, sqrt(1-p)*b, sqrt(1-p)*c, (1-p)*d). The
/// a + p*d combination adds sub-DDs only, never the full matrix.
void applyT1Local(DensityState& rho, fp p, Qubit target);

/// Node-local phase flip: children (a,b,c,d) map to (a, (2p-1)b, (2p-1)c, d).
/// Pure rescaling; performs no DD addition (visible in DDStats).
void applyT2Local(DensityState& rho, fp p, Qubit target);

/// Apply every enabled channel to every target qubit in one memoized
/// traversal. Equivalent to applying, per target in ascending order, T1 then
/// T2 via the local operations.
void applyNoiseSweep(DensityState& rho, const std::vector<Qubit>& targets,
                     const NoiseParams& params);

} // namespace qdd
