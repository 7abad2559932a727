#include "dfsqec/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfsqec {

namespace {

void require_matching(const DensityMatrix& rho, const DephasingGenerator& gen, const char* what) {
  if (gen.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument(std::string(what) + ": generator has " +
                                std::to_string(gen.num_qubits()) + " qubits, state has " +
                                std::to_string(rho.num_qubits()));
  }
}

// z eigenvalue of every basis index, computed once per generator.
std::vector<double> z_table(const DephasingGenerator& gen) {
  const int dim = 1 << gen.num_qubits();
  std::vector<double> z(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) z[static_cast<std::size_t>(i)] = gen.z_eigenvalue(i);
  return z;
}

// Exactly zero for integer weights, so coherences inside a degenerate
// eigenspace pick up a factor of exactly 1.
template <typename Factor>
DensityMatrix attenuate(const DensityMatrix& rho, const DephasingGenerator& gen, Factor factor) {
  const std::vector<double> z = z_table(gen);
  Matrix out = rho.matrix();
  const int dim = rho.dim();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double delta = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (delta == 0.0) continue;
      out(i, j) *= factor(delta);
    }
  }
  return DensityMatrix::unchecked(std::move(out), rho.kind());
}

}  // namespace

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

double DephasingGenerator::z_eigenvalue(int index) const {
  const int n = num_qubits();
  double z = 0.0;
  for (int q = 1; q <= n; ++q) {
    const double w = weights[static_cast<std::size_t>(q - 1)];
    z += qubit_bit(index, q, n) == 0 ? w : -w;
  }
  return z;
}

Matrix DephasingGenerator::lindblad_operator() const {
  const int dim = 1 << num_qubits();
  Matrix l = Matrix::Zero(dim, dim);
  const double amplitude = std::sqrt(strength / 2.0);
  for (int i = 0; i < dim; ++i) l(i, i) = amplitude * z_eigenvalue(i);
  return l;
}

DephasingGenerator make_generator(std::vector<double> weights, double strength,
                                  std::string label) {
  if (weights.empty() || static_cast<int>(weights.size()) > kMaxQubits) {
    throw std::invalid_argument("generator: bad weight vector length");
  }
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
    throw std::invalid_argument("generator: weights are all zero");
  }
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw std::invalid_argument("generator: strength must be finite and >= 0");
  }
  return DephasingGenerator{std::move(weights), strength, std::move(label)};
}

DephasingGenerator make_generator(std::initializer_list<int> qubits, int num_qubits,
                                  double strength, std::string label) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("generator: bad qubit count");
  }
  std::vector<double> weights(static_cast<std::size_t>(num_qubits), 0.0);
  for (int q : qubits) {
    if (q < 1 || q > num_qubits) throw std::out_of_range("generator: qubit out of range");
    weights[static_cast<std::size_t>(q - 1)] = 1.0;
  }
  return make_generator(std::move(weights), strength, std::move(label));
}

std::string_view noise_kind_name(NoiseKind kind) {
  return kind == NoiseKind::kIncoherentSinc ? "sinc" : "exp";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "sinc" || name == "incoherent_sinc") return NoiseKind::kIncoherentSinc;
  if (name == "exp" || name == "markovian_exp") return NoiseKind::kMarkovianExp;
  throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

std::string_view coupling_case_name(CouplingCase c) { return c == CouplingCase::kA ? "a" : "b"; }

CouplingCase parse_coupling_case(std::string_view name) {
  if (name == "a") return CouplingCase::kA;
  if (name == "b") return CouplingCase::kB;
  throw std::invalid_argument("unknown coupling case '" + std::string(name) + "'");
}

double NoiseSpec::collective_value() const {
  if (collective_strength) return *collective_strength;
  if (!(ratio > 0.0)) throw std::invalid_argument("NoiseSpec: ratio must be > 0 with collective noise");
  return kind == NoiseKind::kIncoherentSinc ? kappa0 / ratio : kappa0 / (ratio * ratio);
}

DensityMatrix incoherent_dephase(const DensityMatrix& rho, const DephasingGenerator& gen) {
  require_matching(rho, gen, "incoherent_dephase");
  if (gen.strength == 0.0) return rho;
  const double kappa = gen.strength;
  return attenuate(rho, gen, [kappa](double delta) { return sinc(kappa * delta / 4.0); });
}

DensityMatrix incoherent_dephase(const DensityMatrix& rho,
                                 std::span<const DephasingGenerator> gens) {
  DensityMatrix out = rho;
  for (const auto& gen : gens) out = incoherent_dephase(out, gen);
  return out;
}

DensityMatrix markov_dephase(const DensityMatrix& rho, std::span<const DephasingGenerator> gens,
                             double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("markov_dephase: negative time");
  DensityMatrix out = rho;
  for (const auto& gen : gens) {
    require_matching(rho, gen, "markov_dephase");
    if (gen.strength == 0.0 || t == 0.0) continue;
    const double rate = gen.strength * t / 4.0;
    out = attenuate(out, gen, [rate](double delta) { return std::exp(-rate * delta * delta); });
  }
  return out;
}

DensityMatrix dephase(const DensityMatrix& rho, std::span<const DephasingGenerator> gens,
                      NoiseKind kind, double t) {
  return kind == NoiseKind::kIncoherentSinc ? incoherent_dephase(rho, gens)
                                            : markov_dephase(rho, gens, t);
}

double operator_norm(const Matrix& x) {
  const Matrix gram = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double noise_strength(std::span<const DephasingGenerator> gens) {
  if (gens.empty()) throw std::invalid_argument("noise_strength: empty generator list");
  const int n = gens.front().num_qubits();
  const int dim = 1 << n;
  double individual = 0.0;
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& gen : gens) {
    if (gen.num_qubits() != n) {
      throw std::invalid_argument("noise_strength: generators on different qubit counts");
    }
    const Matrix l = gen.lindblad_operator();
    const double norm = operator_norm(l);
    individual += norm * norm;
    sum += l.adjoint() * l;
  }
  return individual + operator_norm(sum);
}

std::vector<double> partial_strengths(std::span<const DephasingGenerator> gens) {
  std::vector<double> out;
  out.reserve(gens.size());
  for (const auto& gen : gens) {
    const double norm = operator_norm(gen.lindblad_operator());
    out.push_back(2.0 * norm * norm);
  }
  return out;
}

std::vector<DephasingGenerator> restrict_generators(std::span<const DephasingGenerator> gens,
                                                    std::span<const int> qubits) {
  std::vector<int> kept(qubits.begin(), qubits.end());
  std::sort(kept.begin(), kept.end());
  std::vector<DephasingGenerator> out;
  for (const auto& gen : gens) {
    std::vector<double> weights;
    for (int q : kept) {
      if (q < 1 || q > gen.num_qubits()) throw std::out_of_range("restrict_generators: qubit");
      weights.push_back(gen.weights[static_cast<std::size_t>(q - 1)]);
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) continue;
    out.push_back(DephasingGenerator{std::move(weights), gen.strength, gen.label});
  }
  return out;
}

std::vector<DephasingGenerator> build_error_model(const NoiseSpec& spec, int num_qubits) {
  if (!(spec.kappa0 >= 0.0)) throw std::invalid_argument("build_error_model: kappa0 must be >= 0");
  if (spec.collective && num_qubits != 4) {
    throw std::invalid_argument("build_error_model: collective noise needs 4 qubits");
  }
  if (num_qubits != 3 && num_qubits != 4) {
    throw std::invalid_argument("build_error_model: qubit count must be 3 or 4");
  }

  std::vector<DephasingGenerator> gens;
  gens.push_back(make_generator({1}, num_qubits, spec.kappa0, "L1"));
  gens.push_back(make_generator({2}, num_qubits, spec.kappa0, "L2"));
  if (!spec.collective) {
    gens.push_back(make_generator({3}, num_qubits, spec.kappa0, "L3"));
    return gens;
  }

  const double collective = spec.collective_value();
  if (!(collective >= 0.0)) throw std::invalid_argument("build_error_model: negative collective strength");
  if (spec.coupling == CouplingCase::kB || collective == 0.0) {
    gens.push_back(make_generator({3}, num_qubits, spec.kappa0, "Lr"));
    if (collective > 0.0) gens.push_back(make_generator({3, 4}, num_qubits, collective, "Lc"));
    return gens;
  }

  // Case a: one environment, amplitudes add on qubit 3.
  const double r = spec.kind == NoiseKind::kIncoherentSinc ? spec.kappa0 / collective
                                                           : std::sqrt(spec.kappa0 / collective);
  gens.push_back(make_generator({0.0, 0.0, 1.0 + r, 1.0}, collective, "Lc+r"));
  return gens;
}

}  // namespace dfsqec
