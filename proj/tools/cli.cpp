#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "dfsqec/channels.hpp"
#include "dfsqec/codes.hpp"
#include "dfsqec/experiments.hpp"
#include "dfsqec/metrics.hpp"
#include "dfsqec/report.hpp"

namespace dfsqec::cli {

namespace {

std::string fmt12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct SweepArgs {
  std::string config_path;
  std::string scenario;
  std::string kind;
  std::string grid;
  double ratio = 0.5;
  std::string coupling;
  double purity = 1.0;
  std::string inputs;
  std::string out_path;
  unsigned threads = 1;
  CLI::Option* ratio_opt = nullptr;
  CLI::Option* purity_opt = nullptr;
};

void add_scenario_options(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON file with ScenarioConfig fields");
  cmd->add_option("--scenario", a.scenario, "qec_independent | qec_hybrid | no_qec | dfs_qec");
  cmd->add_option("--kind", a.kind, "sinc | exp");
  cmd->add_option("--kappa0", a.grid, "sweep grid start:stop:step or comma list");
  a.ratio_opt = cmd->add_option("--ratio", a.ratio, "kappa0 / kappa_c (default 0.5)");
  cmd->add_option("--case", a.coupling, "coupling case a | b");
  a.purity_opt = cmd->add_option("--purity", a.purity, "ancilla purity in [0, 1]");
  cmd->add_option("--inputs", a.inputs, "input axes, e.g. xyz");
  cmd->add_option("--threads", a.threads, "worker threads for sweep points")->check(CLI::PositiveNumber);
}

ScenarioConfig resolve_config(const SweepArgs& a) {
  ScenarioConfig config;
  if (!a.config_path.empty()) config = scenario_config_from_json(read_file(a.config_path));
  if (config.sweep.empty()) config.sweep = default_sweep();
  if (!a.scenario.empty()) config.scenario = parse_scenario(a.scenario);
  if (!a.kind.empty()) config.kind = parse_noise_kind(a.kind);
  if (!a.grid.empty()) config.sweep = parse_grid(a.grid);
  if (a.ratio_opt->count() > 0) config.ratio = a.ratio;
  if (!a.coupling.empty()) config.coupling = parse_coupling_case(a.coupling);
  if (a.purity_opt->count() > 0) config.ancilla_purity = a.purity;
  if (!a.inputs.empty()) {
    config.inputs.clear();
    for (char c : a.inputs) config.inputs.push_back(parse_axis(std::string_view(&c, 1)));
  }
  config.validate();
  return config;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const ScenarioConfig config = resolve_config(a);
  const ScenarioResult result = run_scenario(config, a.threads);
  if (a.out_path.empty() || a.out_path == "-") {
    emit_csv(result, out);
  } else {
    write_csv(result, a.out_path);
  }
  return 0;
}

int cmd_hump(const SweepArgs& a, std::ostream& out) {
  ScenarioConfig config = resolve_config(a);
  if (a.purity_opt->count() == 0 && a.config_path.empty()) config.ancilla_purity = 0.5;
  const HumpReport report = hump_demo(config, a.threads);
  if (!a.out_path.empty()) write_csv(report.result, a.out_path);
  out << "ancilla_purity," << fmt12(report.result.config.ancilla_purity) << '\n'
      << "fe_at_zero," << fmt12(report.fe_at_zero) << '\n'
      << "non_monotone," << (report.non_monotone ? "true" : "false") << '\n'
      << "crosses_purity1_curve," << (report.crosses_baseline ? "true" : "false") << '\n'
      << "hump," << (report.hump() ? "true" : "false") << '\n';
  return 0;
}

int cmd_analytic(const std::string& curve, const std::string& grid_text, const std::string& kind_text,
                 double ratio, std::ostream& out) {
  const std::vector<double> grid = grid_text.empty() ? default_sweep() : parse_grid(grid_text);
  const NoiseKind kind = kind_text.empty() ? NoiseKind::kIncoherentSinc : parse_noise_kind(kind_text);
  if (!(ratio > 0.0)) throw std::invalid_argument("--ratio must be > 0");

  Scenario scenario;
  if (curve == "qec-independent") {
    scenario = Scenario::kQecIndependent;
  } else if (curve == "qec-strong") {
    scenario = Scenario::kQecHybrid;
  } else if (curve == "no-qec") {
    scenario = Scenario::kNoQec;
  } else {
    throw std::invalid_argument("unknown curve '" + curve + "'");
  }
  out << "kappa0,Fe\n";
  for (double k : grid) {
    if (k < 0.0) throw std::invalid_argument("grid values must be >= 0");
    NoiseSpec spec;
    spec.kappa0 = k;
    spec.kind = kind;
    spec.ratio = ratio;
    spec.collective = scenario == Scenario::kQecHybrid;
    out << fmt12(k) << ',' << fmt12(*analytic_reference(scenario, spec)) << '\n';
  }
  return 0;
}

int cmd_noise_strength(const std::string& spec_path, std::ostream& out) {
  const NoiseSpec spec = noise_spec_from_json(read_file(spec_path));
  NoiseSpec markov = spec;
  markov.kind = NoiseKind::kMarkovianExp;
  const std::vector<DephasingGenerator> gens = build_error_model(markov, spec.collective ? 4 : 3);
  const std::vector<double> partial = partial_strengths(gens);
  out << "generator,partial_strength\n";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    out << gens[i].label << ',' << fmt12(partial[i]) << '\n';
  }
  out << "lambda," << fmt12(noise_strength(gens)) << '\n';
  const int qubit3[] = {3};
  const auto sector = restrict_generators(gens, qubit3);
  if (!sector.empty()) out << "lambda_qubit3," << fmt12(noise_strength(sector)) << '\n';
  return 0;
}

int cmd_chart(const std::vector<std::string>& inputs, const std::string& out_path, bool polarization) {
  std::vector<ScenarioResult> results;
  for (const auto& path : inputs) {
    auto more = read_csv(std::filesystem::path(path));
    results.insert(results.end(), std::make_move_iterator(more.begin()),
                   std::make_move_iterator(more.end()));
  }
  if (results.empty()) throw std::invalid_argument("input CSVs contain no results");
  ChartOptions options;
  options.polarization = polarization;
  write_chart(results, out_path, options);
  return 0;
}

int cmd_check(std::ostream& out) {
  bool ok = true;
  for (const auto& check : run_equivalence_checks()) {
    out << (check.passed() ? "PASS " : "FAIL ") << check.name << "  max_err=" << check.max_error
        << " tol=" << check.tolerance << '\n';
    ok = ok && check.passed();
  }
  out << (ok ? "all checks passed\n" : "equivalence mismatch\n");
  return ok ? 0 : 1;
}

int cmd_circuit(const SweepArgs& a, double kappa0, std::ostream& out) {
  const ScenarioConfig config = resolve_config(a);
  out << to_text(build_scenario_circuit(config.scenario, config.noise_spec(kappa0)));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concatenated DFS + three-qubit phase code dephasing simulator", "dfsqec"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario over a noise sweep and write CSV");
  add_scenario_options(sweep, sweep_args);
  sweep->add_option("--out", sweep_args.out_path, "output CSV path ('-' for stdout)")->required();

  SweepArgs hump_args;
  auto* hump = app.add_subcommand("hump", "qec_independent with imperfect ancillas vs purity 1");
  add_scenario_options(hump, hump_args);
  hump->add_option("--out", hump_args.out_path, "optional CSV of the imperfect-ancilla sweep");

  std::string curve;
  std::string analytic_grid;
  std::string analytic_kind;
  double analytic_ratio = 0.5;
  auto* analytic = app.add_subcommand("analytic", "Print a closed-form fidelity curve as CSV");
  analytic->add_option("--curve", curve, "qec-independent | qec-strong | no-qec")->required();
  analytic->add_option("--kappa0", analytic_grid, "grid start:stop:step or comma list");
  analytic->add_option("--kind", analytic_kind, "sinc | exp");
  analytic->add_option("--ratio", analytic_ratio, "kappa0 / kappa_c for qec-strong (case a)");

  std::string spec_path;
  auto* strength = app.add_subcommand("noise-strength", "Print lambda and partial strengths");
  strength->add_option("--spec", spec_path, "JSON NoiseSpec")->required();

  std::vector<std::string> chart_inputs;
  std::string chart_out;
  bool chart_polarization = false;
  auto* chart = app.add_subcommand("chart", "Render sweep CSVs as an SVG chart");
  chart->add_option("--in", chart_inputs, "input CSV files")->required()->expected(1, -1);
  chart->add_option("--out", chart_out, "output SVG path")->required();
  chart->add_flag("--polarization", chart_polarization, "add the average polarization panel");

  auto* check = app.add_subcommand("check", "Compare simulated and closed-form fidelities");

  SweepArgs circuit_args;
  double circuit_kappa = 1.0;
  auto* circuit = app.add_subcommand("circuit", "Print the gate list of a scenario network");
  add_scenario_options(circuit, circuit_args);
  circuit->add_option("--at", circuit_kappa, "kappa0 used for the noise marker");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sweep) return cmd_sweep(sweep_args, out);
    if (*hump) return cmd_hump(hump_args, out);
    if (*analytic) return cmd_analytic(curve, analytic_grid, analytic_kind, analytic_ratio, out);
    if (*strength) return cmd_noise_strength(spec_path, out);
    if (*chart) return cmd_chart(chart_inputs, chart_out, chart_polarization);
    if (*check) return cmd_check(out);
    if (*circuit) return cmd_circuit(circuit_args, circuit_kappa, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dfsqec::cli
