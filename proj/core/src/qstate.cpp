#include "dfsqec/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dfsqec {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

double unitarity_error(const Matrix& u) {
  const Matrix product = u.adjoint() * u;
  return max_abs_diff(product, Matrix::Identity(u.rows(), u.cols()));
}

StateKind combine_kinds(StateKind a, StateKind b) {
  return (a == StateKind::kState && b == StateKind::kState) ? StateKind::kState
                                                            : StateKind::kDeviation;
}

std::vector<int> sorted_unique_keep(std::span<const int> keep, int num_qubits) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set is empty");
  }
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit in keep set");
  }
  if (sorted.front() < 1 || sorted.back() > num_qubits) {
    throw std::out_of_range("partial_trace: qubit index out of range");
  }
  return sorted;
}

}  // namespace

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument("dimension " + std::to_string(dim) +
                              " is not 2^n for 1 <= n <= " + std::to_string(kMaxQubits));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a.rows(), b.rows(), "max_abs_diff");
  require_same_dim(a.cols(), b.cols(), "max_abs_diff");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix entries, bool unitary)
    : entries_(std::move(entries)), unitary_(unitary) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("Operator: matrix is not square");
  }
  num_qubits_ = qubits_for_dim(entries_.rows());
  if (unitary_ && unitarity_error(entries_) > kUnitaryTolerance) {
    throw std::invalid_argument("Operator: matrix flagged unitary is not unitary");
  }
}

Operator Operator::identity(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("Operator::identity: bad qubit count");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  return Operator(Matrix::Identity(dim, dim), true);
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), unitary_); }

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "Operator product");
  return Operator(a.entries_ * b.entries_, a.unitary_ && b.unitary_);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries, StateKind kind, NoCheck)
    : entries_(std::move(entries)), kind_(kind) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  }
  num_qubits_ = qubits_for_dim(entries_.rows());
}

DensityMatrix::DensityMatrix(Matrix entries, StateKind kind)
    : DensityMatrix(std::move(entries), kind, NoCheck{}) {
  if (hermiticity_error() > kHermitianTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const Complex tr = trace();
  const double expected = kind_ == StateKind::kState ? 1.0 : 0.0;
  if (std::abs(tr - expected) > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) +
                                " does not match kind");
  }
  if (kind_ == StateKind::kState && eigenvalues().minCoeff() < -kPositivityTolerance) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::unchecked(Matrix entries, StateKind kind) {
  return DensityMatrix(std::move(entries), kind, NoCheck{});
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& ket) {
  const double norm = ket.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const Eigen::VectorXcd psi = ket / norm;
  return DensityMatrix(psi * psi.adjoint(), StateKind::kState);
}

DensityMatrix DensityMatrix::basis(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("DensityMatrix::basis: bad length");
  int index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("DensityMatrix::basis: bad digit");
    index = (index << 1) | (c - '0');
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m), StateKind::kState, NoCheck{});
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const Operator id = Operator::identity(num_qubits);
  return DensityMatrix(id.matrix() / static_cast<double>(id.dim()), StateKind::kState, NoCheck{});
}

double DensityMatrix::hermiticity_error() const {
  return max_abs_diff(entries_, entries_.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// Composition

Operator tensor(const Operator& a, const Operator& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out), a.is_unitary() && b.is_unitary());
}

Operator tensor(std::initializer_list<Operator> factors) {
  if (factors.size() == 0) throw std::invalid_argument("tensor: no factors");
  auto it = factors.begin();
  Operator out = *it;
  for (++it; it != factors.end(); ++it) out = tensor(out, *it);
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const Operator product = tensor(Operator(a.matrix()), Operator(b.matrix()));
  return DensityMatrix::unchecked(product.matrix(), combine_kinds(a.kind(), b.kind()));
}

Operator embed(const Operator& gate, std::span<const int> targets, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("embed: bad qubit count");
  }
  const int k = static_cast<int>(targets.size());
  if (k == 0 || gate.num_qubits() != k) {
    throw std::invalid_argument("embed: gate dimension does not match target count");
  }
  for (int i = 0; i < k; ++i) {
    if (targets[i] < 1 || targets[i] > num_qubits) {
      throw std::out_of_range("embed: target qubit out of range");
    }
    for (int j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw std::invalid_argument("embed: duplicate target");
    }
  }

  // Mask of bits that belong to targets; sub-index of a full index reads the
  // target bits in listed order.
  int target_mask = 0;
  for (int q : targets) target_mask |= 1 << (num_qubits - q);
  auto sub_index = [&](int full) {
    int s = 0;
    for (int q : targets) s = (s << 1) | qubit_bit(full, q, num_qubits);
    return s;
  };

  const int dim = 1 << num_qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const int row_sub = sub_index(row);
    for (int col = 0; col < dim; ++col) {
      if ((row & ~target_mask) != (col & ~target_mask)) continue;
      out(row, col) = gate.matrix()(row_sub, sub_index(col));
    }
  }
  return Operator(std::move(out), gate.is_unitary());
}

Operator embed(const Operator& gate, std::initializer_list<int> targets, int num_qubits) {
  return embed(gate, std::span<const int>(targets.begin(), targets.size()), num_qubits);
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Operator& u) {
  require_same_dim(rho.dim(), u.dim(), "apply_unitary");
  if (!u.is_unitary()) throw std::invalid_argument("apply_unitary: operator is not flagged unitary");
  Matrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  // Restore exact Hermiticity lost to rounding.
  out = (out + out.adjoint().eval()) * 0.5;
  return DensityMatrix::unchecked(std::move(out), rho.kind());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  const std::vector<int> kept = sorted_unique_keep(keep, n);
  const int n_keep = static_cast<int>(kept.size());
  const int n_trace = n - n_keep;

  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  auto compose = [&](int keep_index, int trace_index) {
    int full = 0;
    for (int i = 0; i < n_keep; ++i) {
      const int bit = (keep_index >> (n_keep - 1 - i)) & 1;
      full |= bit << (n - kept[i]);
    }
    for (int i = 0; i < n_trace; ++i) {
      const int bit = (trace_index >> (n_trace - 1 - i)) & 1;
      full |= bit << (n - traced[i]);
    }
    return full;
  };

  const int dk = 1 << n_keep;
  const int dt = 1 << n_trace;
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += rho.matrix()(compose(i, t), compose(j, t));
      out(i, j) = acc;
    }
  }
  return DensityMatrix::unchecked(std::move(out), rho.kind());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

double hs_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "hs_overlap");
  const Complex tr = (a.matrix() * b.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw std::invalid_argument("hs_overlap: trace has non-negligible imaginary part");
  }
  return tr.real();
}

// ---------------------------------------------------------------------------
// Gates

namespace gates {

namespace {
Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

Operator I() { return Operator::identity(1); }
Operator X() { return Operator(m2(0, 1, 1, 0), true); }
Operator Y() { return Operator(m2(0, Complex(0, -1), Complex(0, 1), 0), true); }
Operator Z() { return Operator(m2(1, 0, 0, -1), true); }
Operator H() {
  const double r = 1.0 / std::sqrt(2.0);
  return Operator(m2(r, r, r, -r), true);
}
Operator P0() { return Operator(m2(1, 0, 0, 0)); }
Operator P1() { return Operator(m2(0, 0, 0, 1)); }

Operator CNOT() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 3) = m(3, 2) = 1.0;
  return Operator(std::move(m), true);
}

Operator Toffoli() {
  Matrix m = Matrix::Identity(8, 8);
  m(6, 6) = m(7, 7) = 0.0;
  m(6, 7) = m(7, 6) = 1.0;
  return Operator(std::move(m), true);
}

}  // namespace gates

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kZ: return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::kX;
  if (name == "y") return Axis::kY;
  if (name == "z") return Axis::kZ;
  throw std::invalid_argument("invalid axis '" + std::string(name) + "'");
}

DensityMatrix pauli_deviation(Axis axis) {
  switch (axis) {
    case Axis::kX: return DensityMatrix(gates::X().matrix(), StateKind::kDeviation);
    case Axis::kY: return DensityMatrix(gates::Y().matrix(), StateKind::kDeviation);
    case Axis::kZ: return DensityMatrix(gates::Z().matrix(), StateKind::kDeviation);
  }
  throw std::invalid_argument("invalid axis");
}

}  // namespace dfsqec
