#include "dfsqec/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"

namespace dfsqec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses_collective(Scenario scenario) {
  return scenario == Scenario::kQecHybrid || scenario == Scenario::kDfsQec;
}

// Coherence attenuation of a unit-weight single-qubit generator.
double attenuation(NoiseKind kind, double strength) {
  return kind == NoiseKind::kIncoherentSinc ? sinc(strength / 2.0) : std::exp(-strength);
}

double qubit3_attenuation(const NoiseSpec& spec) {
  if (!spec.collective) return attenuation(spec.kind, spec.kappa0);
  const double collective = spec.collective_value();
  if (spec.coupling == CouplingCase::kB || collective == 0.0) {
    return attenuation(spec.kind, spec.kappa0) * attenuation(spec.kind, collective);
  }
  if (spec.kind == NoiseKind::kIncoherentSinc) return sinc((spec.kappa0 + collective) / 2.0);
  const double amplitude = std::sqrt(spec.kappa0) + std::sqrt(collective);
  return std::exp(-amplitude * amplitude);
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

void ScenarioConfig::validate() const {
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (!std::isfinite(sweep[i]) || sweep[i] < 0.0) {
      throw std::invalid_argument("sweep values must be finite and >= 0");
    }
    if (i > 0 && !(sweep[i] > sweep[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
  if (!(ancilla_purity >= 0.0 && ancilla_purity <= 1.0)) {
    throw std::invalid_argument("ancilla_purity must lie in [0, 1]");
  }
  if (uses_collective(scenario) && !(ratio > 0.0 && std::isfinite(ratio))) {
    throw std::invalid_argument("ratio must be > 0 for scenarios with collective noise");
  }
  if (inputs.empty()) throw std::invalid_argument("at least one input axis is required");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (inputs[i] == inputs[j]) throw std::invalid_argument("duplicate input axis");
    }
  }
}

NoiseSpec ScenarioConfig::noise_spec(double kappa0) const {
  NoiseSpec spec;
  spec.kappa0 = kappa0;
  spec.ratio = ratio;
  spec.coupling = coupling;
  spec.kind = kind;
  spec.collective = uses_collective(scenario);
  return spec;
}

DensityMatrix prepare_input(Axis axis, double ancilla_purity, int num_qubits) {
  if (!(ancilla_purity >= 0.0 && ancilla_purity <= 1.0)) {
    throw std::invalid_argument("prepare_input: purity must lie in [0, 1]");
  }
  if (num_qubits != 3 && num_qubits != 4) {
    throw std::invalid_argument("prepare_input: register must have 3 or 4 qubits");
  }
  const Matrix ancilla =
      ancilla_purity * gates::P0().matrix() + (1.0 - ancilla_purity) * 0.5 * Matrix::Identity(2, 2);
  const DensityMatrix anc = DensityMatrix::unchecked(ancilla, StateKind::kState);
  DensityMatrix rho = tensor(anc, pauli_deviation(axis));
  for (int q = 3; q <= num_qubits; ++q) rho = tensor(rho, anc);
  return rho;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
      throw std::invalid_argument("grid must be start:stop:step");
    }
    const double start = parse_double(text.substr(0, first));
    const double stop = parse_double(text.substr(first + 1, second - first - 1));
    const double step = parse_double(text.substr(second + 1));
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    if (stop < start) throw std::invalid_argument("grid stop precedes start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw std::invalid_argument("grid has too many points");
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    if (!piece.empty()) out.push_back(parse_double(piece));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> default_sweep() {
  std::vector<double> out;
  for (int i = 0; i <= 24; ++i) out.push_back(0.5 * i);
  return out;
}

std::optional<double> analytic_reference(Scenario scenario, const NoiseSpec& spec,
                                         double ancilla_purity) {
  if (ancilla_purity != 1.0) return std::nullopt;
  const double s0 = attenuation(spec.kind, spec.kappa0);
  switch (scenario) {
    case Scenario::kNoQec:
      return fe_no_qec_from_attenuation(s0);
    case Scenario::kQecIndependent:
    case Scenario::kDfsQec:
      return fe_qec_from_attenuations(s0, s0, s0);
    case Scenario::kQecHybrid:
      return fe_qec_from_attenuations(s0, s0, qubit3_attenuation(spec));
  }
  return std::nullopt;
}

ScenarioRow run_point(const ScenarioConfig& config, double kappa0) {
  ScenarioRow row;
  row.kappa0 = kappa0;
  row.noise = config.noise_spec(kappa0);

  const Circuit circuit = build_scenario_circuit(config.scenario, row.noise);
  const Circuit reference = circuit.noiseless();
  const int n = circuit.num_qubits();
  const int data[] = {kDataQubit};

  MetricReport& report = row.report;
  report.correlations = {kNaN, kNaN, kNaN};
  report.polarizations = {kNaN, kNaN, kNaN};
  for (Axis axis : config.inputs) {
    const auto u = static_cast<std::size_t>(axis);
    const DensityMatrix input = prepare_input(axis, config.ancilla_purity, n);
    const DensityMatrix in_data = partial_trace(input, data);
    const DensityMatrix out = partial_trace(run_circuit(circuit, input), data);
    const DensityMatrix ref = partial_trace(run_circuit(reference, input), data);
    report.correlations[u] = correlation(in_data, out);
    report.polarizations[u] = polarization_ratio(out, ref);
  }
  if (config.inputs.size() == 3) {
    report.fe = entanglement_fidelity(report.correlations);
    report.p = (report.polarizations[0] + report.polarizations[1] + report.polarizations[2]) / 3.0;
  } else {
    report.fe = kNaN;
    report.p = kNaN;
  }
  report.fe_analytic = analytic_reference(config.scenario, row.noise, config.ancilla_purity);
  return row;
}

ScenarioResult run_scenario(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  ScenarioResult result;
  result.config = config;
  const std::size_t count = config.sweep.size();
  result.rows.resize(count);
  if (count == 0) return result;

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) result.rows[i] = run_point(config, config.sweep[i]);
    return result;
  }

  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        result.rows[i] = run_point(config, config.sweep[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return result;
}

bool is_non_monotone(const std::vector<double>& values, double tolerance) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + tolerance) return true;
  }
  return false;
}

HumpReport hump_demo(const ScenarioConfig& config, unsigned threads) {
  ScenarioConfig imperfect = config;
  imperfect.scenario = Scenario::kQecIndependent;
  ScenarioConfig perfect = imperfect;
  perfect.ancilla_purity = 1.0;

  HumpReport out;
  out.result = run_scenario(imperfect, threads);
  out.baseline = run_scenario(perfect, threads);

  std::vector<double> fe;
  int last_sign = 0;
  for (std::size_t i = 0; i < out.result.rows.size(); ++i) {
    const double value = out.result.rows[i].report.fe;
    fe.push_back(value);
    const double diff = value - out.baseline.rows[i].report.fe;
    const int sign = diff > 1e-12 ? 1 : (diff < -1e-12 ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) out.crosses_baseline = true;
      last_sign = sign;
    }
  }
  out.non_monotone = is_non_monotone(fe);
  if (!out.result.rows.empty() && out.result.rows.front().kappa0 == 0.0) {
    out.fe_at_zero = out.result.rows.front().report.fe;
  } else {
    ScenarioConfig zero = imperfect;
    zero.sweep = {0.0};
    out.fe_at_zero = run_point(zero, 0.0).report.fe;
  }
  return out;
}

Eigen::Matrix4d data_qubit_ptm(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  const Operator paulis[] = {gates::I(), gates::X(), gates::Y(), gates::Z()};
  const int data[] = {kDataQubit};
  Eigen::Matrix4d ptm;
  for (int v = 0; v < 4; ++v) {
    Operator input = tensor(gates::P0(), paulis[v]);
    for (int q = 3; q <= n; ++q) input = tensor(input, gates::P0());
    const DensityMatrix rho = DensityMatrix::unchecked(input.matrix(), StateKind::kDeviation);
    const DensityMatrix out = partial_trace(run_circuit(circuit, rho), data);
    for (int u = 0; u < 4; ++u) {
      ptm(u, v) = (paulis[u].matrix() * out.matrix()).trace().real() / 2.0;
    }
  }
  return ptm;
}

std::vector<CheckResult> run_equivalence_checks() {
  const std::vector<double> grid = default_sweep();
  auto max_error = [&](ScenarioConfig config, auto expected) {
    config.sweep = grid;
    const ScenarioResult result = run_scenario(config);
    double worst = 0.0;
    for (const auto& row : result.rows) {
      worst = std::max(worst, std::abs(row.report.fe - expected(row.kappa0)));
    }
    return worst;
  };

  std::vector<CheckResult> checks;
  constexpr double kTol = 1e-9;

  ScenarioConfig cfg;
  cfg.scenario = Scenario::kQecIndependent;
  checks.push_back({"qec_independent (sinc) vs closed form",
                    max_error(cfg, analytic_fe_qec_independent), kTol});

  cfg.scenario = Scenario::kQecHybrid;
  cfg.ratio = 0.5;
  checks.push_back({"qec_hybrid (sinc, case a, ratio 0.5) vs closed form, kappa3 = 3 kappa0",
                    max_error(cfg, [](double k) { return analytic_fe_qec_strong(k, 3.0 * k); }),
                    kTol});

  for (CouplingCase coupling : {CouplingCase::kA, CouplingCase::kB}) {
    for (double ratio : {0.5, 0.25}) {
      ScenarioConfig dfs;
      dfs.scenario = Scenario::kDfsQec;
      dfs.coupling = coupling;
      dfs.ratio = ratio;
      checks.push_back({"dfs_qec (sinc, case " + std::string(coupling_case_name(coupling)) +
                            ", ratio " + std::to_string(ratio).substr(0, 4) +
                            ") vs independent-noise QEC curve",
                        max_error(dfs, analytic_fe_qec_independent), kTol});
    }
  }

  cfg = ScenarioConfig{};
  cfg.scenario = Scenario::kNoQec;
  checks.push_back({"no_qec (sinc) vs (2 sinc + 2)/4", max_error(cfg, analytic_fe_no_qec), kTol});

  cfg = ScenarioConfig{};
  cfg.kind = NoiseKind::kMarkovianExp;
  checks.push_back({"qec_independent (exp) vs Markovian closed form",
                    max_error(cfg, [](double x) { return analytic_fe_markov({1.0, 1.0}, x); }),
                    kTol});

  cfg.scenario = Scenario::kDfsQec;
  for (CouplingCase coupling : {CouplingCase::kA, CouplingCase::kB}) {
    cfg.coupling = coupling;
    checks.push_back({"dfs_qec (exp, case " + std::string(coupling_case_name(coupling)) +
                          ") vs Markovian independent-noise curve",
                      max_error(cfg, [](double x) { return analytic_fe_markov({1.0, 1.0}, x); }),
                      kTol});
  }

  double worst_p = 0.0;
  for (Scenario s : {Scenario::kQecIndependent, Scenario::kQecHybrid, Scenario::kNoQec,
                     Scenario::kDfsQec}) {
    ScenarioConfig zero;
    zero.scenario = s;
    zero.sweep = {0.0};
    worst_p = std::max(worst_p, std::abs(run_scenario(zero).rows.front().report.p - 1.0));
  }
  checks.push_back({"P = 1 with identical noisy and reference channels", worst_p, 1e-12});
  return checks;
}

// ---------------------------------------------------------------------------
// JSON

ScenarioConfig scenario_config_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");

  ScenarioConfig config;
  try {
    if (j.contains("scenario")) config.scenario = parse_scenario(j["scenario"].get<std::string>());
    if (j.contains("kind")) config.kind = parse_noise_kind(j["kind"].get<std::string>());
    if (j.contains("sweep")) {
      const auto& sweep = j["sweep"];
      config.sweep = sweep.is_string() ? parse_grid(sweep.get<std::string>())
                                       : sweep.get<std::vector<double>>();
    }
    if (j.contains("ratio")) config.ratio = j["ratio"].get<double>();
    if (j.contains("coupling_case")) {
      config.coupling = parse_coupling_case(j["coupling_case"].get<std::string>());
    }
    if (j.contains("ancilla_purity")) config.ancilla_purity = j["ancilla_purity"].get<double>();
    if (j.contains("inputs")) {
      config.inputs.clear();
      for (const auto& axis : j["inputs"]) config.inputs.push_back(parse_axis(axis.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

NoiseSpec noise_spec_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("spec: expected a JSON object");

  NoiseSpec spec;
  spec.collective = true;
  try {
    if (j.contains("kappa0")) spec.kappa0 = j["kappa0"].get<double>();
    if (j.contains("lambda0")) spec.kappa0 = j["lambda0"].get<double>();
    if (j.contains("ratio")) spec.ratio = j["ratio"].get<double>();
    if (j.contains("coupling_case")) {
      spec.coupling = parse_coupling_case(j["coupling_case"].get<std::string>());
    }
    if (j.contains("kind")) spec.kind = parse_noise_kind(j["kind"].get<std::string>());
    if (j.contains("collective")) spec.collective = j["collective"].get<bool>();
    if (j.contains("collective_strength")) {
      spec.collective_strength = j["collective_strength"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec: ") + e.what());
  }
  if (!(spec.kappa0 >= 0.0)) throw std::invalid_argument("spec: kappa0 must be >= 0");
  return spec;
}

}  // namespace dfsqec
