#pragma once

#include "qdd/circuit.hpp"
#include "qdd/noise.hpp"
#include "qdd/tables.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdd {

enum class SimMode { Dense, Naive, Advanced };

[[nodiscard]] const char* simModeName(SimMode m);
[[nodiscard]] std::optional<SimMode> simModeFromName(const std::string& s);

enum class FidelityPolicy {
  Auto, // compute for n <= 20
  On,
  Off,
};

struct SimOptions {
  SimMode mode = SimMode::Advanced;
  NoiseParams noise{};
  std::uint64_t initial = 0; // basis state
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t topK = 16;
  FidelityPolicy fidelity = FidelityPolicy::Auto;
  fp timeoutSec = std::numeric_limits<fp>::infinity();

  /// When set, per-gate noise is suppressed and the enabled channels are
  /// applied exactly once to the listed qubits after the final gate.
  std::optional<std::vector<Qubit>> noiseOnce;
};

struct PhaseTimings {
  fp buildSeconds = 0.0;
  fp simulateSeconds = 0.0;
  fp reportSeconds = 0.0;
  fp totalSeconds = 0.0;
};

struct SimulationReport {
  SimMode mode = SimMode::Advanced;
  std::size_t n = 0;
  std::size_t gateCount = 0;
  std::uint64_t initial = 0;
  NoiseParams noise{};
  bool timedOut = false;
  fp trace = 0.0;
  std::vector<fp> probabilities;                       // full, when n <= 10
  std::vector<std::pair<std::uint64_t, fp>> topProbabilities; // otherwise
  std::optional<fp> fidelity;                          // vs noiseless run
  std::map<std::uint64_t, std::uint64_t> histogram;    // when shots > 0
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  DDStats stats{};
  PhaseTimings timings{};
  std::vector<std::string> warnings;
};

/// Run the circuit from the given basis state, interleaving gates with the
/// configured decoherence noise on each gate's operand qubits. Deterministic
/// up to the timing fields.
SimulationReport simulate(const Circuit& c, const SimOptions& opts);

/// JSON document for a report; stable key order, timing fields are the only
/// run-to-run variable part.
std::string reportToJson(const SimulationReport& r);

} // namespace qdd
