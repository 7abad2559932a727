#pragma once

// Data-qubit metrics (correlations, entanglement fidelity, polarization),
// closed-form reference curves and low-order error-rate fitting.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dfsqec/qstate.hpp"

namespace dfsqec {

using Triple = std::array<double, 3>;  // indexed by Axis: x, y, z

struct MetricReport {
  Triple correlations{};   // C_x, C_y, C_z
  double fe = 0.0;         // (C_x + C_y + C_z + 1) / 4
  Triple polarizations{};  // P_x, P_y, P_z
  double p = 0.0;          // mean of the P_u
  std::optional<double> fe_analytic;
};

/// C_u = tr(in_u out_u) / tr(in_u^2). Throws on a zero-norm input.
double correlation(const DensityMatrix& input, const DensityMatrix& output);
Triple correlations(std::span<const DensityMatrix, 3> inputs,
                    std::span<const DensityMatrix, 3> outputs);

/// Bloch component tr(sigma_u rho) of a single-qubit output state. For a
/// unital channel fed (I + sigma_u)/2 this equals the deviation-mode C_u.
double correlation_from_bloch(Axis axis, const DensityMatrix& output_state);

/// (C_x + C_y + C_z + 1) / 4. Throws if a C_u leaves [-1, 1] by more than 1e-9.
double entanglement_fidelity(const Triple& c);

struct Polarization {
  Triple components{};
  double mean = 0.0;
};

/// P_u = tr(out_u^2) / tr(ref_u^2). Throws on a zero-purity reference.
double polarization_ratio(const DensityMatrix& noisy, const DensityMatrix& reference);
Polarization avg_polarization(std::span<const DensityMatrix, 3> noisy,
                              std::span<const DensityMatrix, 3> reference);

// --- Closed-form curves ---------------------------------------------------
//
// `s_j` is the coherence attenuation on carrier j of the phase code. With
// independent single-carrier dephasing the corrected fidelity is
//   1/2 + (s1 + s2 + s3 - s1 s2 s3) / 4.

double fe_qec_from_attenuations(double s1, double s2, double s3);
/// Uncorrected data qubit with attenuation s: (2 s + 2) / 4.
double fe_no_qec_from_attenuation(double s);

/// 1/2 + (3 sinc(k/2) - sinc^3(k/2)) / 4.
double analytic_fe_qec_independent(double kappa0);
/// 1/2 + (2 sinc(k0/2) + sinc(k3/2) - sinc^2(k0/2) sinc(k3/2)) / 4.
double analytic_fe_qec_strong(double kappa0, double kappa3);
double analytic_fe_no_qec(double kappa0);

/// Decay rates for the Markovian counterparts: carriers 1 and 2 dephase at
/// `lambda0`, carrier 3 at `lambda3`.
struct MarkovRates {
  double lambda0 = 0.0;
  double lambda3 = 0.0;
};

/// Corrected fidelity with each sinc(k/2) replaced by exp(-lambda t).
double analytic_fe_markov(const MarkovRates& rates, double t);
double analytic_fe_markov_no_qec(double lambda0, double t);

// --- Error-rate expansion -------------------------------------------------

struct FeSample {
  double t = 0.0;
  double fe = 1.0;
};

struct ErrorRateFit {
  std::vector<int> orders;
  std::vector<double> tau_inv;  // 1/|tau_k^k| = k! |c_k| for each order
  std::vector<double> coefficients;  // signed c_k of 1 - F_e = sum_k c_k t^k
  double lambda_bound = 0.0;

  /// tau_inv[k] <= lambda_bound^k (1 + 1e-6) for every fitted order.
  [[nodiscard]] bool within_bound() const;
  [[nodiscard]] double rate(int order) const;
};

/// Least-squares fit of 1 - F_e(t) by c_1 t + ... + c_K t^K (F_e(0) = 1).
/// Requires at least max_order + 2 samples and 1 <= max_order <= 3.
ErrorRateFit fit_error_rates(std::span<const FeSample> samples, int max_order,
                             double lambda_bound);

/// `count` equally spaced times on [0, span / lambda].
std::vector<double> fit_time_grid(double lambda, int count = 12, double span = 0.01);

}  // namespace dfsqec
