#include "dfsqec/qstate.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace dfsqec {
namespace {

using testing::Rng;

Matrix diag4(double a, double b, double c, double d) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

TEST(Tensor, IdentityTimesIdentityIsIdentity) {
  EXPECT_EQ(tensor(gates::I(), gates::I()).matrix(), Matrix::Identity(4, 4));
}

TEST(Tensor, ZTensorIdentityIsBigEndian) {
  EXPECT_EQ(tensor(gates::Z(), gates::I()).matrix(), diag4(1, 1, -1, -1));
}

TEST(Tensor, ProjectorTensorXIsUpperLeftBlock) {
  const Matrix m = tensor(gates::P0(), gates::X()).matrix();
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 1) = 1.0;
  expected(1, 0) = 1.0;
  EXPECT_EQ(m, expected);
}

TEST(Tensor, IsAssociative) {
  Rng rng(7);
  const Operator a(testing::ginibre(2, rng));
  const Operator b(testing::ginibre(4, rng));
  const Operator c(testing::ginibre(2, rng));
  EXPECT_LE(max_abs_diff(tensor(tensor(a, b), c).matrix(), tensor(a, tensor(b, c)).matrix()), 1e-13);
}

TEST(Embed, SingleQubitGateOnThirdOfFour) {
  const Operator expected = tensor({gates::I(), gates::I(), gates::Z(), gates::I()});
  EXPECT_EQ(embed(gates::Z(), {3}, 4).matrix(), expected.matrix());
}

TEST(Embed, ReversedCnotMapsBasisStates) {
  // Control on qubit 2, target qubit 1; enumerate the basis.
  const Operator u = embed(gates::CNOT(), {2, 1}, 2);
  const int expected_image[] = {0b00, 0b11, 0b10, 0b01};
  for (int in = 0; in < 4; ++in) {
    for (int out = 0; out < 4; ++out) {
      EXPECT_EQ(u.matrix()(out, in), Complex(out == expected_image[in] ? 1.0 : 0.0))
          << "in=" << in << " out=" << out;
    }
  }
}

TEST(Embed, FullWidthIsTheGate) {
  EXPECT_EQ(embed(gates::H(), {1}, 1).matrix(), gates::H().matrix());
}

TEST(Embed, Errors) {
  EXPECT_THROW(embed(gates::Z(), {5}, 4), std::out_of_range);
  EXPECT_THROW(embed(gates::Z(), {0}, 4), std::out_of_range);
  EXPECT_THROW(embed(gates::CNOT(), {2, 2}, 4), std::invalid_argument);
  EXPECT_THROW(embed(gates::CNOT(), {2}, 4), std::invalid_argument);
}

TEST(Embed, DisjointEmbeddingsCommute) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator g(testing::ginibre(2, rng));
    const Operator h(testing::ginibre(4, rng));
    const Operator a = embed(g, {1}, 4);
    const Operator b = embed(h, {4, 2}, 4);
    EXPECT_LE(max_abs_diff((a * b).matrix(), (b * a).matrix()), 1e-12);
  }
}

TEST(ApplyUnitary, IdentityAndBitFlip) {
  Rng rng(3);
  const DensityMatrix rho = testing::random_state(2, rng);
  EXPECT_LE(max_abs_diff(apply_unitary(rho, Operator::identity(2)).matrix(), rho.matrix()), 1e-15);
  const DensityMatrix flipped = apply_unitary(DensityMatrix::basis("0"), gates::X());
  EXPECT_EQ(flipped.matrix(), DensityMatrix::basis("1").matrix());
}

TEST(ApplyUnitary, HadamardTurnsZDeviationIntoX) {
  const DensityMatrix out = apply_unitary(pauli_deviation(Axis::kZ), gates::H());
  EXPECT_LE(max_abs_diff(out.matrix(), gates::X().matrix()), 1e-15);
  EXPECT_EQ(out.kind(), StateKind::kDeviation);
}

TEST(ApplyUnitary, RejectsUnflaggedAndMismatched) {
  EXPECT_THROW(apply_unitary(DensityMatrix::basis("0"), gates::P0()), std::invalid_argument);
  EXPECT_THROW(apply_unitary(DensityMatrix::basis("00"), gates::X()), std::invalid_argument);
}

TEST(ApplyUnitary, PreservesTraceAndSpectrumOnRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const DensityMatrix rho = testing::random_state(n, rng);
    const Operator u = testing::random_unitary(n, rng);
    const DensityMatrix out = apply_unitary(rho, u);
    EXPECT_LE(std::abs(out.trace() - 1.0), 1e-12);
    EXPECT_LE((out.eigenvalues() - rho.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(out.hermiticity_error(), 1e-12);
  }
}

TEST(PartialTrace, ProductStateReturnsFactor) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix a = testing::random_state(1 + trial % 2, rng);
    const DensityMatrix b = testing::random_state(1 + (trial / 2) % 2, rng);
    const DensityMatrix ab = tensor(a, b);
    std::vector<int> first;
    for (int q = 1; q <= a.num_qubits(); ++q) first.push_back(q);
    EXPECT_LE(max_abs_diff(partial_trace(ab, first).matrix(), a.matrix()), 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0;
  const DensityMatrix rho = DensityMatrix::pure(bell);
  EXPECT_LE(max_abs_diff(partial_trace(rho, {1}).matrix(), Matrix::Identity(2, 2) * 0.5), 1e-15);
}

TEST(PartialTrace, MatchesIndexSumOracle) {
  Rng rng(99);
  const std::vector<std::vector<int>> keeps = {{1}, {2}, {3}, {4}, {2, 4}, {1, 3}, {1, 2, 3}};
  for (const auto& keep : keeps) {
    const DensityMatrix rho = testing::random_state(4, rng);
    const Matrix oracle = testing::brute_force_partial_trace(rho.matrix(), keep, 4);
    EXPECT_LE(max_abs_diff(partial_trace(rho, keep).matrix(), oracle), 1e-14);
  }
}

TEST(PartialTrace, ThreeOfFourOnRandomProductState) {
  Rng rng(17);
  const DensityMatrix f1 = testing::random_state(1, rng);
  const DensityMatrix f2 = testing::random_state(1, rng);
  const DensityMatrix f3 = testing::random_state(1, rng);
  const DensityMatrix f4 = testing::random_state(1, rng);
  const DensityMatrix rho = tensor(tensor(tensor(f1, f2), f3), f4);
  const int keep[] = {3};
  const Matrix oracle = testing::brute_force_partial_trace(rho.matrix(), keep, 4);
  EXPECT_LE(max_abs_diff(partial_trace(rho, keep).matrix(), oracle), 1e-14);
  EXPECT_LE(max_abs_diff(partial_trace(rho, keep).matrix(), f3.matrix()), 1e-14);
}

TEST(PartialTrace, Errors) {
  const DensityMatrix rho = DensityMatrix::basis("01");
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), std::invalid_argument);
  EXPECT_THROW(partial_trace(rho, {3}), std::out_of_range);
  EXPECT_THROW(partial_trace(rho, {1, 1}), std::invalid_argument);
}

TEST(HsOverlap, Values) {
  Rng rng(1);
  const DensityMatrix pure = testing::random_pure_state(2, rng);
  EXPECT_NEAR(hs_overlap(pure, pure), 1.0, 1e-14);
  EXPECT_EQ(hs_overlap(pauli_deviation(Axis::kZ), pauli_deviation(Axis::kX)), 0.0);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(1);
  EXPECT_DOUBLE_EQ(hs_overlap(mixed, mixed), 0.5);
  EXPECT_THROW(hs_overlap(mixed, DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_THROW(DensityMatrix(gates::Y().matrix() * Complex(0, 1), StateKind::kDeviation),
               std::invalid_argument);  // not Hermitian
  EXPECT_THROW(DensityMatrix(Matrix::Identity(2, 2), StateKind::kState), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(gates::Z().matrix(), StateKind::kState), std::invalid_argument);
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(negative, StateKind::kState), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix(negative - Matrix::Identity(2, 2) * 0.5, StateKind::kDeviation));
  EXPECT_THROW(DensityMatrix(Matrix::Identity(3, 3) / 3.0, StateKind::kState), std::invalid_argument);
}

TEST(Operator, UnitaryFlagIsChecked) {
  EXPECT_THROW(Operator(gates::P0().matrix(), true), std::invalid_argument);
  EXPECT_NO_THROW(Operator(gates::H().matrix(), true));
}

TEST(Gates, SigmaZEigenvalueConvention) {
  const DensityMatrix zero = DensityMatrix::basis("0");
  EXPECT_EQ((gates::Z().matrix() * zero.matrix())(0, 0), Complex(1.0));
}

}  // namespace
}  // namespace dfsqec
