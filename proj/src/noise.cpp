#include "qdd/noise.hpp"

#include "qdd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace qdd {

namespace {
void checkProbability(fp p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw NumericError("error probability must lie in [0, 1]");
  }
}

void checkTarget(const DensityState& rho, Qubit target) {
  if (target < 0 || static_cast<std::size_t>(target) >= rho.qubits()) {
    throw StructureError("noise target out of range");
  }
}
} // namespace

KrausChannel krausT1(fp p) {
  checkProbability(p);
  const fp keep = std::sqrt(1.0 - p);
  const fp jump = std::sqrt(p);
  return {ChannelKind::T1, p,
          {Mat2{1.0, 0.0, 0.0, keep}, Mat2{0.0, jump, 0.0, 0.0}}};
}

KrausChannel krausT2(fp p) {
  checkProbability(p);
  const fp s0 = std::sqrt(p);
  const fp s1 = std::sqrt(1.0 - p);
  return {ChannelKind::T2, p, {Mat2{s0, 0.0, 0.0, s0}, Mat2{s1, 0.0, 0.0, -s1}}};
}

ChannelValidation validateChannel(const KrausChannel& c) {
  Mat2 sum{};
  for (const auto& e : c.matrices) {
    // E^dagger E
    sum[0] += std::conj(e[0]) * e[0] + std::conj(e[2]) * e[2];
    sum[1] += std::conj(e[0]) * e[1] + std::conj(e[2]) * e[3];
    sum[2] += std::conj(e[1]) * e[0] + std::conj(e[3]) * e[2];
    sum[3] += std::conj(e[1]) * e[1] + std::conj(e[3]) * e[3];
  }
  fp residual = 0.0;
  residual = std::max(residual, std::abs(sum[0] - std::complex<fp>{1.0}));
  residual = std::max(residual, std::abs(sum[1]));
  residual = std::max(residual, std::abs(sum[2]));
  residual = std::max(residual, std::abs(sum[3] - std::complex<fp>{1.0}));
  return {residual <= kEps, residual};
}

void applyChannelNaive(DensityState& rho, const KrausChannel& c, Qubit target) {
  checkTarget(rho, target);
  auto& ctx = rho.context();
  auto acc = ctx.mZero();
  for (const auto& k : c.matrices) {
    const auto e = ctx.embedGate({k, false}, target, {});
    const auto term = ctx.multiply(e, ctx.multiply(rho.root(), ctx.adjoint(e)));
    acc = ctx.add(acc, term);
  }
  rho.setRoot(acc);
}

namespace {

/// Shared single-traversal machinery for the node-local noise maps. Maps are
/// linear, so results are memoized per node with incoming weights factored
/// out and re-applied.
struct LocalNoisePass {
  Context& ctx;
  std::vector<bool> isTarget;
  Qubit deepestTarget;
  bool t1 = false;
  bool t2 = false;
  Complex damp{};   // p1
  Complex keep{};   // sqrt(1 - p1)
  Complex keep2{};  // 1 - p1
  Complex phase{};  // 2*p2 - 1
  std::unordered_map<const mNode*, mEdge> memo;

  mEdge run(const mEdge& e) {
    if (e.w.isZero()) {
      return ctx.mZero();
    }
    if (e.isTerminal()) {
      throw StructureError("noise pass reached the terminal above a target");
    }
    const mNode* p = e.node;
    const auto it = memo.find(p);
    if (it != memo.end()) {
      return ctx.scale(it->second, e.w);
    }
    ++ctx.ops.noiseSweepNodeVisits;
    const auto level = p->level;
    std::array<mEdge, 4> kids = p->e;
    if (level < deepestTarget) {
      for (auto& k : kids) {
        if (!k.w.isZero()) {
          k = run(k);
        }
      }
    }
    if (isTarget[static_cast<std::size_t>(level)]) {
      if (t1) {
        const auto d = kids[3];
        kids[0] = ctx.add(kids[0], ctx.scale(d, damp));
        kids[1] = ctx.scale(kids[1], keep);
        kids[2] = ctx.scale(kids[2], keep);
        kids[3] = ctx.scale(d, keep2);
      }
      if (t2) {
        kids[1] = ctx.scale(kids[1], phase);
        kids[2] = ctx.scale(kids[2], phase);
      }
    }
    const auto res = ctx.makeMatrixNode(level, kids);
    memo.emplace(p, res);
    return ctx.scale(res, e.w);
  }
};

LocalNoisePass makePass(DensityState& rho, const std::vector<Qubit>& targets,
                        const NoiseParams& np) {
  auto& ctx = rho.context();
  LocalNoisePass pass{ctx,
                      std::vector<bool>(rho.qubits(), false),
                      0,
                      np.t1Enabled,
                      np.t2Enabled,
                      {},
                      {},
                      {},
                      {},
                      {}};
  for (const auto t : targets) {
    checkTarget(rho, t);
    pass.isTarget[static_cast<std::size_t>(t)] = true;
    pass.deepestTarget = std::max(pass.deepestTarget, t);
  }
  if (pass.t1) {
    checkProbability(np.t1p);
    pass.damp = ctx.lookupComplex(np.t1p, 0.0);
    pass.keep = ctx.lookupComplex(std::sqrt(1.0 - np.t1p), 0.0);
    pass.keep2 = ctx.lookupComplex(1.0 - np.t1p, 0.0);
  }
  if (pass.t2) {
    checkProbability(np.t2p);
    pass.phase = ctx.lookupComplex(2.0 * np.t2p - 1.0, 0.0);
  }
  return pass;
}

} // namespace

void applyT1Local(DensityState& rho, fp p, Qubit target) {
  checkTarget(rho, target);
  checkProbability(p);
  if (p == 0.0) {
    return; // identity map
  }
  NoiseParams np{p, 0.0, true, false};
  auto pass = makePass(rho, {target}, np);
  rho.setRoot(pass.run(rho.root()));
}

void applyT2Local(DensityState& rho, fp p, Qubit target) {
  checkTarget(rho, target);
  checkProbability(p);
  if (p == 1.0) {
    return; // 2p - 1 == 1
  }
  NoiseParams np{0.0, p, false, true};
  auto pass = makePass(rho, {target}, np);
  rho.setRoot(pass.run(rho.root()));
}

void applyNoiseSweep(DensityState& rho, const std::vector<Qubit>& targets,
                     const NoiseParams& params) {
  if (targets.empty() || !params.any()) {
    return;
  }
  auto& ctx = rho.context();
  ++ctx.ops.noiseSweepCalls;
  auto pass = makePass(rho, targets, params);
  rho.setRoot(pass.run(rho.root()));
}

} // namespace qdd
