#pragma once

#include "qdd/complex_table.hpp"
#include "qdd/edge.hpp"

#include <string>
#include <vector>

namespace qdd {

enum class GateKind {
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  Rx,
  Ry,
  Rz,
  Phase,
  Cx,
  Cz,
  CPhase,
  Swap,
};

[[nodiscard]] bool gateIsParameterized(GateKind k);
[[nodiscard]] const char* gateName(GateKind k);

/// The 2x2 base matrix of a gate kind (the controlled kinds Cx/Cz/CPhase
/// yield their target action; Swap has no 2x2 base and is rejected).
[[nodiscard]] Mat2 gateBaseMatrix(GateKind k, fp angle);

struct Gate {
  GateKind kind;
  fp angle = 0.0; // rotation/phase kinds only
  std::vector<Qubit> targets;
  std::vector<Qubit> controls;

  /// Every qubit the gate touches (targets and controls), ascending.
  [[nodiscard]] std::vector<Qubit> operands() const;
};

struct Circuit {
  std::size_t n = 0;
  std::vector<Gate> gates;
};

/// Structural validation: index bounds, disjoint targets/controls, angle
/// presence matching the kind. Throws StructureError.
void validateGate(const Gate& g, std::size_t n);
void validateCircuit(const Circuit& c);

/// Standard QFT on n qubits: for each qubit i, H(i) followed by
/// CPhase(pi/2^(k-i)) from every k > i; optionally floor(n/2) closing swaps.
Circuit genQft(std::size_t n, bool withFinalSwaps = true);

/// Result of parsing the QASM subset; warnings report ignored statements
/// (creg, measure, barrier).
struct ParseResult {
  Circuit circuit;
  std::vector<std::string> warnings;
};

/// Parse the documented OPENQASM 2.0 subset. Throws ParseError with a
/// 1-based line number on malformed input.
ParseResult parseQasm(const std::string& text);

/// Emit a circuit in the same subset; parseQasm(emitQasm(c)) reproduces c.
std::string emitQasm(const Circuit& c);

} // namespace qdd
