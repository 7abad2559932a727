#include "dfsqec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dfsqec/channels.hpp"

namespace dfsqec {

double correlation(const DensityMatrix& input, const DensityMatrix& output) {
  const double norm = hs_overlap(input, input);
  if (norm == 0.0) throw std::invalid_argument("correlation: zero-norm input deviation");
  return hs_overlap(input, output) / norm;
}

Triple correlations(std::span<const DensityMatrix, 3> inputs,
                    std::span<const DensityMatrix, 3> outputs) {
  Triple c{};
  for (std::size_t u = 0; u < 3; ++u) c[u] = correlation(inputs[u], outputs[u]);
  return c;
}

double correlation_from_bloch(Axis axis, const DensityMatrix& output_state) {
  if (output_state.num_qubits() != 1) {
    throw std::invalid_argument("correlation_from_bloch: expects a single-qubit state");
  }
  return hs_overlap(pauli_deviation(axis), output_state);
}

double entanglement_fidelity(const Triple& c) {
  for (double value : c) {
    if (std::abs(value) > 1.0 + 1e-9) {
      throw std::invalid_argument("entanglement_fidelity: correlation " + std::to_string(value) +
                                  " outside [-1, 1]");
    }
  }
  return (c[0] + c[1] + c[2] + 1.0) / 4.0;
}

double polarization_ratio(const DensityMatrix& noisy, const DensityMatrix& reference) {
  const double ref = hs_overlap(reference, reference);
  if (ref == 0.0) throw std::invalid_argument("polarization: zero-purity reference");
  return hs_overlap(noisy, noisy) / ref;
}

Polarization avg_polarization(std::span<const DensityMatrix, 3> noisy,
                              std::span<const DensityMatrix, 3> reference) {
  Polarization out;
  for (std::size_t u = 0; u < 3; ++u) {
    out.components[u] = polarization_ratio(noisy[u], reference[u]);
  }
  out.mean = (out.components[0] + out.components[1] + out.components[2]) / 3.0;
  return out;
}

double fe_qec_from_attenuations(double s1, double s2, double s3) {
  return 0.5 + 0.25 * (s1 + s2 + s3 - s1 * s2 * s3);
}

double fe_no_qec_from_attenuation(double s) { return (2.0 * s + 2.0) / 4.0; }

double analytic_fe_qec_independent(double kappa0) {
  const double s = sinc(kappa0 / 2.0);
  return 0.5 + 0.25 * (3.0 * s - s * s * s);
}

double analytic_fe_qec_strong(double kappa0, double kappa3) {
  const double s0 = sinc(kappa0 / 2.0);
  const double s3 = sinc(kappa3 / 2.0);
  return 0.5 + 0.25 * (2.0 * s0 + s3 - s0 * s0 * s3);
}

double analytic_fe_no_qec(double kappa0) { return fe_no_qec_from_attenuation(sinc(kappa0 / 2.0)); }

double analytic_fe_markov(const MarkovRates& rates, double t) {
  if (rates.lambda0 < 0.0 || rates.lambda3 < 0.0) {
    throw std::invalid_argument("analytic_fe_markov: negative rate");
  }
  const double e0 = std::exp(-rates.lambda0 * t);
  const double e3 = std::exp(-rates.lambda3 * t);
  return 0.5 + 0.25 * (2.0 * e0 + e3 - e0 * e0 * e3);
}

double analytic_fe_markov_no_qec(double lambda0, double t) {
  return fe_no_qec_from_attenuation(std::exp(-lambda0 * t));
}

// ---------------------------------------------------------------------------

bool ErrorRateFit::within_bound() const {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (tau_inv[i] > std::pow(lambda_bound, orders[i]) * (1.0 + 1e-6)) return false;
  }
  return true;
}

double ErrorRateFit::rate(int order) const {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == order) return tau_inv[i];
  }
  throw std::out_of_range("ErrorRateFit: order " + std::to_string(order) + " was not fitted");
}

ErrorRateFit fit_error_rates(std::span<const FeSample> samples, int max_order,
                             double lambda_bound) {
  if (max_order < 1 || max_order > 3) {
    throw std::invalid_argument("fit_error_rates: max_order must be in 1..3");
  }
  if (static_cast<int>(samples.size()) < max_order + 2) {
    throw std::invalid_argument("fit_error_rates: insufficient samples");
  }

  // Columns are scaled to (t / t_max)^k for conditioning, then unscaled.
  double t_max = 0.0;
  for (const auto& s : samples) t_max = std::max(t_max, std::abs(s.t));
  if (t_max == 0.0) throw std::invalid_argument("fit_error_rates: all samples at t = 0");

  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(rows, max_order);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = samples[static_cast<std::size_t>(i)].t / t_max;
    double power = 1.0;
    for (int k = 0; k < max_order; ++k) {
      power *= x;
      design(i, k) = power;
    }
    rhs(i) = 1.0 - samples[static_cast<std::size_t>(i)].fe;
  }
  const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(rhs);

  ErrorRateFit fit;
  fit.lambda_bound = lambda_bound;
  double factorial = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    factorial *= k;
    const double c = scaled(k - 1) / std::pow(t_max, k);
    fit.orders.push_back(k);
    fit.coefficients.push_back(c);
    fit.tau_inv.push_back(factorial * std::abs(c));
  }
  return fit;
}

std::vector<double> fit_time_grid(double lambda, int count, double span) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_time_grid: lambda must be > 0");
  if (count < 2) throw std::invalid_argument("fit_time_grid: need at least two points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  const double t_end = span / lambda;
  for (int i = 0; i < count; ++i) grid.push_back(t_end * i / (count - 1));
  return grid;
}

}  // namespace dfsqec
