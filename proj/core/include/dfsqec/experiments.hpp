#pragma once

// Scenario runner: prepares pseudo-pure inputs, runs a scenario network over a
// noise sweep and reduces each output to the data-qubit metrics.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dfsqec/channels.hpp"
#include "dfsqec/codes.hpp"
#include "dfsqec/metrics.hpp"
#include "dfsqec/qstate.hpp"

namespace dfsqec {

struct ScenarioConfig {
  Scenario scenario = Scenario::kQecIndependent;
  NoiseKind kind = NoiseKind::kIncoherentSinc;
  std::vector<double> sweep;  // kappa0 (or lambda0 t), >= 0 and strictly increasing
  double ratio = 0.5;
  CouplingCase coupling = CouplingCase::kA;
  double ancilla_purity = 1.0;
  std::vector<Axis> inputs = {Axis::kX, Axis::kY, Axis::kZ};

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  [[nodiscard]] NoiseSpec noise_spec(double kappa0) const;
};

struct ScenarioRow {
  double kappa0 = 0.0;
  NoiseSpec noise;
  MetricReport report;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<ScenarioRow> rows;
};

/// |0><0| on the ancillas (mixed toward I/2 by `ancilla_purity`), sigma_u on
/// the data qubit 2. A traceless deviation on 3 or 4 qubits.
DensityMatrix prepare_input(Axis axis, double ancilla_purity, int num_qubits = 4);

/// 0.5:12:0.5 style inclusive grid, or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);
/// kappa0 / 2 in {0, 0.25, ..., 6}: 25 points spanning the first sinc zeros.
std::vector<double> default_sweep();

/// Closed-form F_e for the configuration, when one exists (perfect ancillas).
std::optional<double> analytic_reference(Scenario scenario, const NoiseSpec& spec,
                                         double ancilla_purity = 1.0);

/// Evaluates one sweep point; the reference run for P_u reuses the circuit
/// with the noise marker zeroed.
ScenarioRow run_point(const ScenarioConfig& config, double kappa0);

/// All sweep points, evaluated on `threads` workers and ordered by sweep index.
ScenarioResult run_scenario(const ScenarioConfig& config, unsigned threads = 1);

struct HumpReport {
  ScenarioResult result;    // the requested purity
  ScenarioResult baseline;  // same sweep at purity 1
  bool non_monotone = false;
  bool crosses_baseline = false;
  double fe_at_zero = 1.0;

  [[nodiscard]] bool hump() const { return non_monotone || crosses_baseline; }
};

/// qec_independent sweep with imperfect ancillas against the purity-1 curve.
HumpReport hump_demo(const ScenarioConfig& config, unsigned threads = 1);

/// True if `values` ever increases by more than `tolerance`.
bool is_non_monotone(const std::vector<double>& values, double tolerance = 1e-12);

/// Pauli transfer matrix R_uv = tr(sigma_u E(sigma_v)) / 2 (u, v in I, X, Y, Z)
/// of the data-qubit channel, ancillas prepared in |0>.
Eigen::Matrix4d data_qubit_ptm(const Circuit& circuit);

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  [[nodiscard]] bool passed() const { return max_error <= tolerance; }
};

/// Simulated-vs-closed-form comparisons over the default sweep.
std::vector<CheckResult> run_equivalence_checks();

// --- JSON configuration ---------------------------------------------------

/// ScenarioConfig from a JSON object; every field is optional.
/// Fields: scenario, kind, sweep (array or grid string), ratio,
/// coupling_case, ancilla_purity, inputs.
ScenarioConfig scenario_config_from_json(std::string_view text);

/// NoiseSpec from a JSON object. Fields: kappa0 (alias lambda0), ratio,
/// coupling_case, kind, collective (default true), collective_strength.
NoiseSpec noise_spec_from_json(std::string_view text);

}  // namespace dfsqec
