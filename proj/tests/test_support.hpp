#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library path it is used to check.

#include <random>
#include <span>
#include <vector>

#include "dfsqec/channels.hpp"
#include "dfsqec/qstate.hpp"

namespace dfsqec::testing {

using Rng = std::mt19937_64;

Matrix ginibre(int dim, Rng& rng);
/// Random full-rank state (trace one).
DensityMatrix random_state(int num_qubits, Rng& rng);
/// Random pure state.
DensityMatrix random_pure_state(int num_qubits, Rng& rng);
/// Haar-ish random unitary via QR of a Ginibre matrix.
Operator random_unitary(int num_qubits, Rng& rng);

/// Tr over the complement of `keep` as sum_t K_t rho K_t^dagger with
/// K_t = (x)_q (I if kept, <t_q| otherwise).
Matrix brute_force_partial_trace(const Matrix& rho, std::span<const int> keep, int num_qubits);

/// exp(t L) applied to vec(rho), with L the row-major vectorized Lindbladian
/// sum_mu L (x) conj(L) - 1/2 (L^dag L (x) I) - 1/2 (I (x) (L^dag L)^T).
Matrix lindblad_expm_oracle(const Matrix& rho, const std::vector<Matrix>& jump_ops, double t);

struct MonteCarloAverage {
  Matrix mean;
  Eigen::MatrixXd standard_error;  // elementwise, of |.| of the complex deviation
};

/// Average of U(phi) rho U(phi)^dag with U = exp(-i phi W / 2),
/// phi uniform on [-kappa/2, kappa/2].
MonteCarloAverage monte_carlo_phase_average(const Matrix& rho, const DephasingGenerator& gen,
                                            int samples, Rng& rng);

}  // namespace dfsqec::testing
