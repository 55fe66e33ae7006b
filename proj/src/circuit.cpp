#include "qdd/circuit.hpp"

#include "qdd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdd {

bool gateIsParameterized(GateKind k) {
  switch (k) {
  case GateKind::Rx:
  case GateKind::Ry:
  case GateKind::Rz:
  case GateKind::Phase:
  case GateKind::CPhase:
    return true;
  default:
    return false;
  }
}

const char* gateName(GateKind k) {
  switch (k) {
  case GateKind::X:
    return "x";
  case GateKind::Y:
    return "y";
  case GateKind::Z:
    return "z";
  case GateKind::H:
    return "h";
  case GateKind::S:
    return "s";
  case GateKind::Sdg:
    return "sdg";
  case GateKind::T:
    return "t";
  case GateKind::Tdg:
    return "tdg";
  case GateKind::Rx:
    return "rx";
  case GateKind::Ry:
    return "ry";
  case GateKind::Rz:
    return "rz";
  case GateKind::Phase:
    return "p";
  case GateKind::Cx:
    return "cx";
  case GateKind::Cz:
    return "cz";
  case GateKind::CPhase:
    return "cp";
  case GateKind::Swap:
    return "swap";
  }
  return "?";
}

Mat2 gateBaseMatrix(GateKind k, fp angle) {
  using namespace std::complex_literals;
  const auto invSqrt2 = 1.0 / std::numbers::sqrt2;
  switch (k) {
  case GateKind::X:
  case GateKind::Cx:
    return {0.0, 1.0, 1.0, 0.0};
  case GateKind::Y:
    return {0.0, -1.0i, 1.0i, 0.0};
  case GateKind::Z:
  case GateKind::Cz:
    return {1.0, 0.0, 0.0, -1.0};
  case GateKind::H:
    return {invSqrt2, invSqrt2, invSqrt2, -invSqrt2};
  case GateKind::S:
    return {1.0, 0.0, 0.0, 1.0i};
  case GateKind::Sdg:
    return {1.0, 0.0, 0.0, -1.0i};
  case GateKind::T:
    return {1.0, 0.0, 0.0, std::exp(0.25i * std::numbers::pi)};
  case GateKind::Tdg:
    return {1.0, 0.0, 0.0, std::exp(-0.25i * std::numbers::pi)};
  case GateKind::Rx:
    return {std::cos(angle / 2), -1.0i * std::sin(angle / 2),
            -1.0i * std::sin(angle / 2), std::cos(angle / 2)};
  case GateKind::Ry:
    return {std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2),
            std::cos(angle / 2)};
  case GateKind::Rz:
    return {std::exp(-0.5i * angle), 0.0, 0.0, std::exp(0.5i * angle)};
  case GateKind::Phase:
  case GateKind::CPhase:
    return {1.0, 0.0, 0.0, std::exp(1.0i * angle)};
  case GateKind::Swap:
    break;
  }
  throw StructureError("gate kind has no 2x2 base matrix");
}

std::vector<Qubit> Gate::operands() const {
  std::vector<Qubit> all = targets;
  all.insert(all.end(), controls.begin(), controls.end());
  std::sort(all.begin(), all.end());
  return all;
}

void validateGate(const Gate& g, std::size_t n) {
  const auto expectedTargets = g.kind == GateKind::Swap ? 2U : 1U;
  if (g.targets.size() != expectedTargets) {
    throw StructureError("gate has the wrong number of targets");
  }
  const auto controlled = g.kind == GateKind::Cx || g.kind == GateKind::Cz ||
                          g.kind == GateKind::CPhase;
  if (controlled ? g.controls.size() != 1 : !g.controls.empty()) {
    throw StructureError("gate has the wrong number of controls");
  }
  auto all = g.operands();
  for (const auto q : all) {
    if (q < 0 || static_cast<std::size_t>(q) >= n) {
      throw StructureError("gate qubit index out of range");
    }
  }
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw StructureError("gate targets and controls must be distinct");
  }
  if (!gateIsParameterized(g.kind) && g.angle != 0.0) {
    throw StructureError("angle given for a non-parameterized gate");
  }
  if (gateIsParameterized(g.kind) && !std::isfinite(g.angle)) {
    throw NumericError("gate angle must be finite");
  }
}

void validateCircuit(const Circuit& c) {
  if (c.n < 1) {
    throw StructureError("circuit needs at least one qubit");
  }
  for (const auto& g : c.gates) {
    validateGate(g, c.n);
  }
}

Circuit genQft(std::size_t n, bool withFinalSwaps) {
  if (n < 1) {
    throw StructureError("QFT needs at least one qubit");
  }
  Circuit c;
  c.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    c.gates.push_back({GateKind::H, 0.0, {static_cast<Qubit>(i)}, {}});
    for (std::size_t k = i + 1; k < n; ++k) {
      const auto angle = std::numbers::pi / static_cast<fp>(1ULL << (k - i));
      c.gates.push_back({GateKind::CPhase,
                         angle,
                         {static_cast<Qubit>(i)},
                         {static_cast<Qubit>(k)}});
    }
  }
  if (withFinalSwaps) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      c.gates.push_back({GateKind::Swap,
                         0.0,
                         {static_cast<Qubit>(i), static_cast<Qubit>(n - 1 - i)},
                         {}});
    }
  }
  return c;
}

} // namespace qdd
