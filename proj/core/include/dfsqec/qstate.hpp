#pragma once

// Dense complex-matrix foundation for small (<= 8 qubit) register simulation.
//
// Qubits are labelled 1..n. Basis ordering is big-endian: qubit 1 is the most
// significant bit of a basis index, so |b1 b2 ... bn> has index
// b1*2^(n-1) + ... + bn. sigma_z |0> = +|0>.

#include <complex>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dfsqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 8;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

/// Square operator on an n-qubit register, n >= 1.
class Operator {
 public:
  explicit Operator(Matrix entries, bool unitary = false);

  static Operator identity(int num_qubits);

  [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }
  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const Matrix& matrix() const { return entries_; }
  [[nodiscard]] bool is_unitary() const { return unitary_; }
  [[nodiscard]] Operator adjoint() const;

  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Matrix entries_;
  int num_qubits_ = 0;
  bool unitary_ = false;
};

enum class StateKind {
  kState,      // trace one, positive semidefinite
  kDeviation,  // traceless deviation (NMR pseudo-pure style), no positivity
};

/// Hermitian density operator or traceless deviation.
///
/// The checked constructor enforces Hermiticity, the trace condition for the
/// kind, and (for kState) min eigenvalue >= -1e-10. Library operations that
/// provably preserve these go through `unchecked`.
class DensityMatrix {
 public:
  DensityMatrix(Matrix entries, StateKind kind);

  static DensityMatrix unchecked(Matrix entries, StateKind kind);

  /// |psi><psi| for a normalized (or normalizable) ket.
  static DensityMatrix pure(const Eigen::VectorXcd& ket);
  /// |bits><bits| for a string such as "0110" (qubit 1 first).
  static DensityMatrix basis(std::string_view bits);
  static DensityMatrix maximally_mixed(int num_qubits);

  [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }
  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] StateKind kind() const { return kind_; }
  [[nodiscard]] const Matrix& matrix() const { return entries_; }
  [[nodiscard]] Complex trace() const { return entries_.trace(); }
  [[nodiscard]] Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Largest |rho(i,j) - conj(rho(j,i))|.
  [[nodiscard]] double hermiticity_error() const;
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;

 private:
  struct NoCheck {};
  DensityMatrix(Matrix entries, StateKind kind, NoCheck);

  Matrix entries_;
  int num_qubits_ = 0;
  StateKind kind_ = StateKind::kState;
};

/// log2(dim); throws std::invalid_argument unless dim is 2^n with 1 <= n <= kMaxQubits.
int qubits_for_dim(Eigen::Index dim);

/// Bit of `qubit` (1-based, big-endian) in basis index `index` of an n-qubit register.
inline int qubit_bit(int index, int qubit, int num_qubits) {
  return (index >> (num_qubits - qubit)) & 1;
}

// Kronecker product, `a` occupying the leading (most significant) qubits.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(std::initializer_list<Operator> factors);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Lifts `gate` to an n-qubit operator acting on `targets` (in listed order:
/// targets[0] is the gate's most significant qubit) and identity elsewhere.
Operator embed(const Operator& gate, std::span<const int> targets, int num_qubits);
Operator embed(const Operator& gate, std::initializer_list<int> targets, int num_qubits);

/// U rho U^dagger. `u` must carry the unitary flag.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Operator& u);

/// Reduced operator on `keep` (ascending qubit order is retained).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Re tr(a b). Throws if the imaginary part exceeds 1e-10.
double hs_overlap(const DensityMatrix& a, const DensityMatrix& b);

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

namespace gates {
Operator I();
Operator X();
Operator Y();
Operator Z();
Operator H();
/// Control is the first (most significant) qubit.
Operator CNOT();
/// Controls are the two leading qubits, target the last.
Operator Toffoli();
/// |0><0| and |1><1|, not unitary.
Operator P0();
Operator P1();
}  // namespace gates

enum class Axis { kX, kY, kZ };

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view name);
/// Traceless single-qubit deviation sigma_u.
DensityMatrix pauli_deviation(Axis axis);

}  // namespace dfsqec
