#pragma once

// z-type dephasing engines.
//
// Both engines act diagonally in the computational basis: element <m|rho|m'>
// is scaled by a factor depending only on Delta = sum_j w_j (m_j - m'_j),
// with m_j = +1 for |0> and -1 for |1>.
//
//   incoherent (gradient average): sinc(kappa * Delta / 4)
//   Markovian (Lindblad):          exp(-lambda * t * Delta^2 / 4)
//
// For a single qubit with unit weight Delta = +-2 on the coherences, giving
// sinc(kappa/2) and exp(-lambda t) respectively.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfsqec/qstate.hpp"

namespace dfsqec {

/// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// One error generator W = sum_j w_j sigma_z^j with a strength.
///
/// For Markovian use `strength` is lambda_mu and the Lindblad operator is
/// L = sqrt(strength/2) W. For incoherent use it is the dimensionless phase
/// spread kappa = k(t) L: the phase on qubit j is w_j * kappa * x with x
/// uniform on [-1/2, 1/2].
struct DephasingGenerator {
  std::vector<double> weights;  // weights[j-1] belongs to qubit j
  double strength = 0.0;
  std::string label;

  [[nodiscard]] int num_qubits() const { return static_cast<int>(weights.size()); }
  /// sum_j w_j m_j for basis index `index`.
  [[nodiscard]] double z_eigenvalue(int index) const;
  /// The Lindblad operator sqrt(strength/2) W as a dense matrix.
  [[nodiscard]] Matrix lindblad_operator() const;
};

/// Validated generator; throws if weights are all zero or strength < 0.
DephasingGenerator make_generator(std::vector<double> weights, double strength,
                                  std::string label);
/// Unit-weight generator on the listed qubits of an n-qubit register.
DephasingGenerator make_generator(std::initializer_list<int> qubits, int num_qubits,
                                  double strength, std::string label);

enum class NoiseKind { kIncoherentSinc, kMarkovianExp };
enum class CouplingCase { kA, kB };

std::string_view noise_kind_name(NoiseKind kind);  // "sinc" | "exp"
NoiseKind parse_noise_kind(std::string_view name);
std::string_view coupling_case_name(CouplingCase c);  // "a" | "b"
CouplingCase parse_coupling_case(std::string_view name);

/// Engineered hybrid noise.
///
/// `kappa0` is the independent strength on qubits 1, 2, 3: a phase spread for
/// kIncoherentSinc, lambda0 * t for kMarkovianExp. `ratio` is the amplitude
/// ratio of independent to collective coupling: kappa0 / kappa_c for the
/// incoherent engine, sqrt(lambda0 / lambda_c) for the Markovian one. It plays
/// the role of epsilon = |L_r| / |L_c| in the case a/b strength formulas.
struct NoiseSpec {
  double kappa0 = 0.0;
  double ratio = 0.5;
  CouplingCase coupling = CouplingCase::kA;
  NoiseKind kind = NoiseKind::kIncoherentSinc;
  bool collective = false;
  /// Collective strength set directly (kappa_c or lambda_c * t); overrides `ratio`.
  std::optional<double> collective_strength;

  /// kappa_c (or lambda_c t) implied by the fields above.
  [[nodiscard]] double collective_value() const;
};

/// Applies the gradient-averaged channel of one generator.
DensityMatrix incoherent_dephase(const DensityMatrix& rho, const DephasingGenerator& gen);
/// Generators are independent random phases: applied one after another.
DensityMatrix incoherent_dephase(const DensityMatrix& rho,
                                 std::span<const DephasingGenerator> gens);

/// Exact Lindblad evolution for time t >= 0 under commuting z-type generators.
DensityMatrix markov_dephase(const DensityMatrix& rho, std::span<const DephasingGenerator> gens,
                             double t);

/// Dispatches on `kind`; `t` is ignored for the incoherent engine.
DensityMatrix dephase(const DensityMatrix& rho, std::span<const DephasingGenerator> gens,
                      NoiseKind kind, double t = 1.0);

/// |X| = max eig sqrt(X^dagger X).
double operator_norm(const Matrix& x);

/// lambda = sum_mu |L_mu|^2 + |sum_mu L_mu^dagger L_mu|.
double noise_strength(std::span<const DephasingGenerator> gens);
/// lambda_mu = 2 |L_mu|^2 for each generator.
std::vector<double> partial_strengths(std::span<const DephasingGenerator> gens);

/// Restricts generators to `qubits` (ascending order kept) and drops the ones
/// that become trivial.
std::vector<DephasingGenerator> restrict_generators(std::span<const DephasingGenerator> gens,
                                                    std::span<const int> qubits);

/// Independent generators on qubits 1..3 plus, when `spec.collective`, the
/// collective coupling of qubits 3 and 4.
///
/// Case a merges the qubit-3 residual coupling into the collective generator
/// (weights 1 + r on qubit 3, 1 on qubit 4), so qubit 3 alone sees
/// kappa_c + kappa0 (label "Lc+r"). Case b keeps a unit-weight (3,4) generator and the
/// independent qubit-3 generator apart. Requires n = 4 when collective.
std::vector<DephasingGenerator> build_error_model(const NoiseSpec& spec, int num_qubits);

/// Converts gradient parameters to the dimensionless spread gamma * G * t * L.
struct GradientSpec {
  double gyromagnetic_ratio = 0.0;
  double gradient = 0.0;
  double duration = 0.0;
  double sample_length = 0.0;

  [[nodiscard]] double kappa() const {
    return gyromagnetic_ratio * gradient * duration * sample_length;
  }
};

}  // namespace dfsqec
