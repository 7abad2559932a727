#include "test_support.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace dfsqec::testing {

Matrix ginibre(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

DensityMatrix random_state(int num_qubits, Rng& rng) {
  const Matrix g = ginibre(1 << num_qubits, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint().eval()) * 0.5;
  return DensityMatrix(rho, StateKind::kState);
}

DensityMatrix random_pure_state(int num_qubits, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd psi(1 << num_qubits);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(normal(rng), normal(rng));
  return DensityMatrix::pure(psi);
}

Operator random_unitary(int num_qubits, Rng& rng) {
  const Matrix g = ginibre(1 << num_qubits, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix column phases from R's diagonal.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return Operator(q, true);
}

Matrix brute_force_partial_trace(const Matrix& rho, std::span<const int> keep, int num_qubits) {
  std::vector<bool> kept(static_cast<std::size_t>(num_qubits + 1), false);
  int n_keep = 0;
  for (int q : keep) {
    kept[static_cast<std::size_t>(q)] = true;
    ++n_keep;
  }
  const int n_trace = num_qubits - n_keep;
  Matrix out = Matrix::Zero(1 << n_keep, 1 << n_keep);
  for (int t = 0; t < (1 << n_trace); ++t) {
    Matrix k = Matrix::Ones(1, 1);
    int bit = n_trace - 1;
    for (int q = 1; q <= num_qubits; ++q) {
      Matrix factor;
      if (kept[static_cast<std::size_t>(q)]) {
        factor = Matrix::Identity(2, 2);
      } else {
        factor = Matrix::Zero(1, 2);
        factor(0, (t >> bit) & 1) = 1.0;
        --bit;
      }
      Matrix next(k.rows() * factor.rows(), k.cols() * factor.cols());
      for (Eigen::Index i = 0; i < k.rows(); ++i) {
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
          next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) =
              k(i, j) * factor;
        }
      }
      k = next;
    }
    out += k * rho * k.adjoint();
  }
  return out;
}

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}
}  // namespace

Matrix lindblad_expm_oracle(const Matrix& rho, const std::vector<Matrix>& jump_ops, double t) {
  const Eigen::Index d = rho.rows();
  const Matrix id = Matrix::Identity(d, d);
  Matrix super = Matrix::Zero(d * d, d * d);
  for (const Matrix& l : jump_ops) {
    const Matrix ldl = l.adjoint() * l;
    super += kron(l, l.conjugate());
    super -= 0.5 * kron(ldl, id);
    super -= 0.5 * kron(id, ldl.transpose());
  }
  // Row-major vec: index i*d + j holds rho(i, j).
  Eigen::VectorXcd vec(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) vec(i * d + j) = rho(i, j);
  }
  const Matrix propagator = (super * t).exp();
  const Eigen::VectorXcd evolved = propagator * vec;
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = evolved(i * d + j);
  }
  return out;
}

MonteCarloAverage monte_carlo_phase_average(const Matrix& rho, const DephasingGenerator& gen,
                                            int samples, Rng& rng) {
  const Eigen::Index d = rho.rows();
  const int n = gen.num_qubits();
  Eigen::VectorXd z(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int q = 1; q <= n; ++q) {
      const int bit = (static_cast<int>(i) >> (n - q)) & 1;
      acc += (bit ? -1.0 : 1.0) * gen.weights[static_cast<std::size_t>(q - 1)];
    }
    z(i) = acc;
  }
  std::uniform_real_distribution<double> uniform(-gen.strength / 2.0, gen.strength / 2.0);
  Matrix sum = Matrix::Zero(d, d);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(d, d);
  for (int s = 0; s < samples; ++s) {
    const double phi = uniform(rng);
    Eigen::VectorXcd u(d);
    for (Eigen::Index i = 0; i < d; ++i) u(i) = std::exp(Complex(0.0, -phi * z(i) / 2.0));
    const Matrix sample = u.asDiagonal() * rho * u.conjugate().asDiagonal();
    sum += sample;
    sum_sq += sample.cwiseAbs2();
  }
  MonteCarloAverage out;
  out.mean = sum / static_cast<double>(samples);
  const Eigen::MatrixXd mean_abs2 = out.mean.cwiseAbs2();
  const Eigen::MatrixXd var =
      (sum_sq / static_cast<double>(samples) - mean_abs2).cwiseMax(0.0) /
      static_cast<double>(samples - 1);
  out.standard_error = var.cwiseSqrt();
  return out;
}

}  // namespace dfsqec::testing
