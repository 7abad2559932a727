#pragma once

// Gate library and circuit builders for the three-qubit phase code, the
// two-qubit decoherence-free encoding of qubits 3 and 4, and the concatenated
// network that uses the DFS qubit as the third carrier of the phase code.
//
// Register layout (all scenarios): qubit 1 physical ancilla, qubit 2 data,
// qubit 3 ancilla carrier (or, with qubit 4, the logical DFS carrier).
// Logical DFS basis: |0_L> = |01>_{34}, |1_L> = |10>_{34}.

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dfsqec/channels.hpp"
#include "dfsqec/qstate.hpp"

namespace dfsqec {

struct Gate {
  std::string name;
  Operator matrix;
  std::vector<int> targets;
};

/// Validated gate: unitary flag, target count matches matrix size.
Gate make_gate(std::string name, Operator matrix, std::vector<int> targets);

struct NoiseMarker {
  std::vector<DephasingGenerator> generators;
  NoiseKind kind = NoiseKind::kIncoherentSinc;
  double time = 1.0;  // Markovian evolution time; the incoherent engine ignores it
};

using CircuitStep = std::variant<Gate, NoiseMarker>;

class Circuit {
 public:
  explicit Circuit(int num_qubits);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<CircuitStep>& steps() const { return steps_; }
  [[nodiscard]] std::size_t noise_marker_count() const;

  Circuit& add(Gate gate);
  Circuit& add(NoiseMarker marker);
  /// Appends all steps of `fragment`, which must have the same qubit count.
  Circuit& append(const Circuit& fragment);

  /// Copy with every noise marker replaced by `gates` (error injection).
  [[nodiscard]] Circuit with_noise_replaced(const std::vector<Gate>& gates) const;
  /// Copy with every noise marker's generators set to zero strength.
  [[nodiscard]] Circuit noiseless() const;

 private:
  int num_qubits_;
  std::vector<CircuitStep> steps_;
};

/// Called after each step with its index and the state it produced.
using StepObserver = std::function<void(std::size_t, const CircuitStep&, const DensityMatrix&)>;

DensityMatrix run_circuit(const Circuit& circuit, const DensityMatrix& input,
                          const StepObserver& observer = {});

/// One line per step: `NAME t1 t2 ...` or `NOISE label κ=value` (λt for Markovian).
std::string to_text(const Circuit& circuit);
std::ostream& operator<<(std::ostream& os, const Circuit& circuit);

// --- Physical gates -------------------------------------------------------

Gate hadamard(int qubit);
Gate pauli_x(int qubit);
Gate pauli_z(int qubit);
Gate cnot(int control, int target);
Gate toffoli(int control_a, int control_b, int target);

// --- Logical gates on the DFS pair ----------------------------------------

enum class LogicalGate { kXL, kZL, kHL, kCnotIntoL, kCnotFromL };

LogicalGate parse_logical_gate(std::string_view name);
std::string_view logical_gate_name(LogicalGate name);

struct DfsPair {
  int first = 3;   // carries Z_L
  int second = 4;
};

/// Logical operation on the DFS pair. `partner` is the physical control of
/// CNOT_into_L or the physical target of CNOT_from_L, and is ignored otherwise.
///
/// X_L = X (x) X, Z_L = Z on `first`, H_L = Hadamard on span{|01>,|10>} and
/// identity on span{|00>,|11>}; CNOT_into_L is controlled X_L and CNOT_from_L a
/// CNOT controlled by `first`.
Gate logical_gate(LogicalGate name, int partner = 0, DfsPair pair = {});
Gate logical_gate(std::string_view name, int partner = 0, DfsPair pair = {});

// --- Code fragments -------------------------------------------------------

/// CNOT(data->a), CNOT(data->b), H on all three carriers.
Circuit qec3_encode(int num_qubits, int data, int ancilla_a, int ancilla_b);
/// H on all three, CNOT(data->a), CNOT(data->b), Toffoli(a, b -> data).
Circuit qec3_recover(int num_qubits, int data, int ancilla_a, int ancilla_b);
/// X on `second`, then CNOT(first->second): (a|0>+b|1>)|0> -> a|01> + b|10>.
Circuit dfs_encode(int num_qubits, DfsPair pair = {});
Circuit dfs_decode(int num_qubits, DfsPair pair = {});

enum class Scenario { kQecIndependent, kQecHybrid, kNoQec, kDfsQec };

std::string_view scenario_name(Scenario scenario);
/// Accepts `qec_independent` as well as `qec-independent`.
Scenario parse_scenario(std::string_view name);
/// 3 for the physical-qubit scenarios, 4 for dfs_qec.
int scenario_qubits(Scenario scenario);
inline constexpr int kDataQubit = 2;

/// Full network for a scenario with exactly one noise marker.
///
/// Physical scenarios run on qubits 1..3 and see the error model restricted to
/// those qubits. Throws on scenario/spec mismatch: collective noise in
/// qec_independent, or no collective noise in qec_hybrid.
Circuit build_scenario_circuit(Scenario scenario, const NoiseSpec& spec);

/// Total |entry| of rho over rows or columns whose DFS pair lies outside
/// span{|01>,|10>}. Zero iff rho is supported on the code block.
double dfs_leakage(const DensityMatrix& rho, DfsPair pair = {});

}  // namespace dfsqec
