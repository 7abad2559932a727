#include "dfsqec/codes.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dfsqec {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_distinct(std::initializer_list<int> qubits, const char* what) {
  for (auto i = qubits.begin(); i != qubits.end(); ++i) {
    for (auto j = qubits.begin(); j != i; ++j) {
      if (*i == *j) throw std::invalid_argument(std::string(what) + ": duplicate qubit index");
    }
  }
}

void require_range(const std::vector<int>& targets, int num_qubits) {
  for (int q : targets) {
    if (q < 1 || q > num_qubits) throw std::out_of_range("circuit: gate target out of range");
  }
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

Operator hadamard_on_dfs_block() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  // |01> -> (|01> + |10>)/sqrt2, |10> -> (|01> - |10>)/sqrt2
  m(1, 1) = r;
  m(2, 1) = r;
  m(1, 2) = r;
  m(2, 2) = -r;
  return Operator(std::move(m), true);
}

}  // namespace

Gate make_gate(std::string name, Operator matrix, std::vector<int> targets) {
  if (!matrix.is_unitary()) throw std::invalid_argument("gate '" + name + "' is not unitary");
  if (static_cast<int>(targets.size()) != matrix.num_qubits()) {
    throw std::invalid_argument("gate '" + name + "': target count does not match matrix size");
  }
  return Gate{std::move(name), std::move(matrix), std::move(targets)};
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("Circuit: bad qubit count");
  }
}

std::size_t Circuit::noise_marker_count() const {
  std::size_t count = 0;
  for (const auto& step : steps_) count += std::holds_alternative<NoiseMarker>(step) ? 1 : 0;
  return count;
}

Circuit& Circuit::add(Gate gate) {
  require_range(gate.targets, num_qubits_);
  // Validates distinctness.
  (void)embed(gate.matrix, gate.targets, num_qubits_);
  steps_.emplace_back(std::move(gate));
  return *this;
}

Circuit& Circuit::add(NoiseMarker marker) {
  for (const auto& gen : marker.generators) {
    if (gen.num_qubits() != num_qubits_) {
      throw std::invalid_argument("Circuit: noise generator qubit count mismatch");
    }
  }
  if (!(marker.time >= 0.0)) throw std::invalid_argument("Circuit: negative noise time");
  steps_.emplace_back(std::move(marker));
  return *this;
}

Circuit& Circuit::append(const Circuit& fragment) {
  if (fragment.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("Circuit::append: qubit count mismatch");
  }
  steps_.insert(steps_.end(), fragment.steps_.begin(), fragment.steps_.end());
  return *this;
}

Circuit Circuit::with_noise_replaced(const std::vector<Gate>& gates) const {
  Circuit out(num_qubits_);
  for (const auto& step : steps_) {
    if (std::holds_alternative<NoiseMarker>(step)) {
      for (const auto& gate : gates) out.add(gate);
    } else {
      out.steps_.push_back(step);
    }
  }
  return out;
}

Circuit Circuit::noiseless() const {
  Circuit out = *this;
  for (auto& step : out.steps_) {
    if (auto* marker = std::get_if<NoiseMarker>(&step)) {
      for (auto& gen : marker->generators) gen.strength = 0.0;
    }
  }
  return out;
}

DensityMatrix run_circuit(const Circuit& circuit, const DensityMatrix& input,
                          const StepObserver& observer) {
  if (input.num_qubits() != circuit.num_qubits()) {
    throw std::invalid_argument("run_circuit: state and circuit qubit counts differ");
  }
  DensityMatrix rho = input;
  const auto& steps = circuit.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::visit(Overloaded{
                   [&](const Gate& gate) {
                     rho = apply_unitary(rho, embed(gate.matrix, gate.targets, circuit.num_qubits()));
                   },
                   [&](const NoiseMarker& marker) {
                     rho = dephase(rho, marker.generators, marker.kind, marker.time);
                   },
               },
               steps[i]);
    if (observer) observer(i, steps[i], rho);
  }
  return rho;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  for (const auto& step : circuit.steps()) {
    std::visit(Overloaded{
                   [&](const Gate& gate) {
                     os << gate.name;
                     for (int q : gate.targets) os << ' ' << q;
                     os << '\n';
                   },
                   [&](const NoiseMarker& marker) {
                     const char* symbol =
                         marker.kind == NoiseKind::kIncoherentSinc ? "κ=" : "λt=";
                     const double scale = marker.kind == NoiseKind::kIncoherentSinc ? 1.0 : marker.time;
                     if (marker.generators.empty()) os << "NOISE (none)\n";
                     for (const auto& gen : marker.generators) {
                       os << "NOISE " << gen.label << ' ' << symbol
                          << format_number(gen.strength * scale) << '\n';
                     }
                   },
               },
               step);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Circuit& circuit) { return os << to_text(circuit); }

// ---------------------------------------------------------------------------
// Gates

Gate hadamard(int qubit) { return make_gate("H", gates::H(), {qubit}); }
Gate pauli_x(int qubit) { return make_gate("X", gates::X(), {qubit}); }
Gate pauli_z(int qubit) { return make_gate("Z", gates::Z(), {qubit}); }
Gate cnot(int control, int target) { return make_gate("CNOT", gates::CNOT(), {control, target}); }
Gate toffoli(int control_a, int control_b, int target) {
  return make_gate("TOFFOLI", gates::Toffoli(), {control_a, control_b, target});
}

LogicalGate parse_logical_gate(std::string_view name) {
  if (name == "X_L") return LogicalGate::kXL;
  if (name == "Z_L") return LogicalGate::kZL;
  if (name == "H_L") return LogicalGate::kHL;
  if (name == "CNOT_into_L") return LogicalGate::kCnotIntoL;
  if (name == "CNOT_from_L") return LogicalGate::kCnotFromL;
  throw std::invalid_argument("unknown logical gate '" + std::string(name) + "'");
}

std::string_view logical_gate_name(LogicalGate name) {
  switch (name) {
    case LogicalGate::kXL: return "X_L";
    case LogicalGate::kZL: return "Z_L";
    case LogicalGate::kHL: return "H_L";
    case LogicalGate::kCnotIntoL: return "CNOT_into_L";
    case LogicalGate::kCnotFromL: return "CNOT_from_L";
  }
  return "?";
}

Gate logical_gate(LogicalGate name, int partner, DfsPair pair) {
  const std::string label(logical_gate_name(name));
  switch (name) {
    case LogicalGate::kXL:
      return make_gate(label, tensor(gates::X(), gates::X()), {pair.first, pair.second});
    case LogicalGate::kZL:
      return make_gate(label, tensor(gates::Z(), gates::I()), {pair.first, pair.second});
    case LogicalGate::kHL:
      return make_gate(label, hadamard_on_dfs_block(), {pair.first, pair.second});
    case LogicalGate::kCnotIntoL: {
      const Operator xl = tensor(gates::X(), gates::X());
      const Matrix controlled = tensor(gates::P0(), Operator::identity(2)).matrix() +
                                tensor(gates::P1(), xl).matrix();
      return make_gate(label, Operator(controlled, true), {partner, pair.first, pair.second});
    }
    case LogicalGate::kCnotFromL:
      return make_gate(label, gates::CNOT(), {pair.first, partner});
  }
  throw std::invalid_argument("unknown logical gate");
}

Gate logical_gate(std::string_view name, int partner, DfsPair pair) {
  return logical_gate(parse_logical_gate(name), partner, pair);
}

// ---------------------------------------------------------------------------
// Fragments

Circuit qec3_encode(int num_qubits, int data, int ancilla_a, int ancilla_b) {
  require_distinct({data, ancilla_a, ancilla_b}, "qec3_encode");
  Circuit c(num_qubits);
  c.add(cnot(data, ancilla_a));
  c.add(cnot(data, ancilla_b));
  c.add(hadamard(data));
  c.add(hadamard(ancilla_a));
  c.add(hadamard(ancilla_b));
  return c;
}

Circuit qec3_recover(int num_qubits, int data, int ancilla_a, int ancilla_b) {
  require_distinct({data, ancilla_a, ancilla_b}, "qec3_recover");
  Circuit c(num_qubits);
  c.add(hadamard(data));
  c.add(hadamard(ancilla_a));
  c.add(hadamard(ancilla_b));
  c.add(cnot(data, ancilla_a));
  c.add(cnot(data, ancilla_b));
  c.add(toffoli(ancilla_a, ancilla_b, data));
  return c;
}

Circuit dfs_encode(int num_qubits, DfsPair pair) {
  require_distinct({pair.first, pair.second}, "dfs_encode");
  Circuit c(num_qubits);
  c.add(pauli_x(pair.second));
  c.add(cnot(pair.first, pair.second));
  return c;
}

Circuit dfs_decode(int num_qubits, DfsPair pair) {
  require_distinct({pair.first, pair.second}, "dfs_decode");
  Circuit c(num_qubits);
  c.add(cnot(pair.first, pair.second));
  c.add(pauli_x(pair.second));
  return c;
}

// ---------------------------------------------------------------------------
// Scenarios

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kQecIndependent: return "qec_independent";
    case Scenario::kQecHybrid: return "qec_hybrid";
    case Scenario::kNoQec: return "no_qec";
    case Scenario::kDfsQec: return "dfs_qec";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  std::string normalized(name);
  for (char& ch : normalized) {
    if (ch == '-') ch = '_';
  }
  for (Scenario s : {Scenario::kQecIndependent, Scenario::kQecHybrid, Scenario::kNoQec,
                     Scenario::kDfsQec}) {
    if (normalized == scenario_name(s)) return s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

int scenario_qubits(Scenario scenario) { return scenario == Scenario::kDfsQec ? 4 : 3; }

Circuit build_scenario_circuit(Scenario scenario, const NoiseSpec& spec) {
  if (scenario == Scenario::kQecIndependent && spec.collective) {
    throw std::invalid_argument("qec_independent does not take collective noise");
  }
  if (scenario == Scenario::kQecHybrid && !spec.collective) {
    throw std::invalid_argument("qec_hybrid requires collective noise");
  }

  const int n = scenario_qubits(scenario);
  NoiseMarker noise;
  noise.kind = spec.kind;
  noise.time = 1.0;
  if (spec.collective) {
    const std::vector<DephasingGenerator> full = build_error_model(spec, 4);
    if (n == 4) {
      noise.generators = full;
    } else {
      const int physical[] = {1, 2, 3};
      noise.generators = restrict_generators(full, physical);
    }
  } else {
    noise.generators = build_error_model(spec, n);
  }

  constexpr int kAncillaA = 1;
  constexpr int kCarrier3 = 3;
  Circuit c(n);
  switch (scenario) {
    case Scenario::kNoQec:
      c.add(std::move(noise));
      break;
    case Scenario::kQecIndependent:
    case Scenario::kQecHybrid:
      c.append(qec3_encode(n, kDataQubit, kAncillaA, kCarrier3));
      c.add(std::move(noise));
      c.append(qec3_recover(n, kDataQubit, kAncillaA, kCarrier3));
      break;
    case Scenario::kDfsQec: {
      const DfsPair pair{3, 4};
      c.append(dfs_encode(n, pair));
      // Phase-code encode with carrier 3 replaced by the logical DFS qubit.
      c.add(cnot(kDataQubit, kAncillaA));
      c.add(logical_gate(LogicalGate::kCnotIntoL, kDataQubit, pair));
      c.add(hadamard(kDataQubit));
      c.add(hadamard(kAncillaA));
      c.add(logical_gate(LogicalGate::kHL, 0, pair));
      c.add(std::move(noise));
      c.add(hadamard(kDataQubit));
      c.add(hadamard(kAncillaA));
      c.add(logical_gate(LogicalGate::kHL, 0, pair));
      c.add(cnot(kDataQubit, kAncillaA));
      c.add(logical_gate(LogicalGate::kCnotIntoL, kDataQubit, pair));
      // Syndrome of the logical carrier is its Z_L sector, read on qubit 3.
      c.add(toffoli(kAncillaA, pair.first, kDataQubit));
      c.append(dfs_decode(n, pair));
      break;
    }
  }
  return c;
}

double dfs_leakage(const DensityMatrix& rho, DfsPair pair) {
  const int n = rho.num_qubits();
  if (pair.first < 1 || pair.first > n || pair.second < 1 || pair.second > n) {
    throw std::out_of_range("dfs_leakage: pair out of range");
  }
  auto in_block = [&](int index) {
    return qubit_bit(index, pair.first, n) != qubit_bit(index, pair.second, n);
  };
  double total = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    for (int j = 0; j < rho.dim(); ++j) {
      if (!in_block(i) || !in_block(j)) total += std::abs(rho(i, j));
    }
  }
  return total;
}

}  // namespace dfsqec
