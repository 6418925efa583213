#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "epp/linalg.hpp"

using namespace epp;

namespace {

StateVector random_state(std::mt19937_64& gen, int qubits) {
    std::normal_distribution<double> n;
    Eigen::VectorXcd v(1 << qubits);
    for (auto& z : v) z = {n(gen), n(gen)};
    return StateVector(v).normalized();
}

ComplexMatrix random_unitary(std::mt19937_64& gen) {
    std::normal_distribution<double> n;
    ComplexMatrix g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = {n(gen), n(gen)};
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ();
}

double max_diff(const StateVector& a, const StateVector& b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(StateVector, BasisAndBits) {
    const auto s = StateVector::from_bits("0110");
    EXPECT_EQ(s.num_qubits(), 4);
    EXPECT_EQ(s.dim(), 16u);
    EXPECT_EQ(s[6], Complex(1.0));
    EXPECT_EQ(max_diff(s, StateVector::basis(4, 6)), 0.0);
}

TEST(StateVector, RejectsNonPowerOfTwo) {
    EXPECT_THROW(StateVector({Complex(1), Complex(0), Complex(0)}), std::invalid_argument);
}

TEST(StateVector, NormalizeZeroThrows) {
    EXPECT_THROW(StateVector({Complex(0), Complex(0)}).normalized(), std::domain_error);
}

TEST(TwoQubitPureState, MakeValidatesNorm) {
    EXPECT_NO_THROW(TwoQubitPureState::make(1, 0, 0, 0));
    EXPECT_THROW(TwoQubitPureState::make(1, 1, 0, 0), std::invalid_argument);
}

TEST(Tensor, KnownProduct) {
    const StateVector plus{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};
    const auto t = tensor(StateVector::basis(1, 1), plus);
    EXPECT_NEAR(std::abs(t[2]), std::numbers::sqrt2 / 2, 1e-15);
    EXPECT_NEAR(std::abs(t[3]), std::numbers::sqrt2 / 2, 1e-15);
    EXPECT_EQ(t[0], Complex(0));
}

TEST(Tensor, Associative) {
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_state(gen, 1);
        const auto b = random_state(gen, 2);
        const auto c = random_state(gen, 1);
        EXPECT_LT(max_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-14);
    }
}

TEST(Kron, MatchesElementwiseDefinition) {
    const ComplexMatrix a = gates::hadamard();
    const ComplexMatrix b = gates::pauli_y();
    const ComplexMatrix k = kron(a, b);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), a(i / 2, j / 2) * b(i % 2, j % 2));
}

TEST(Permutation, SwapMovesBits) {
    const auto swap12 = QubitPermutation::swap(4, 1, 2);
    auto moved = permute_qubits(StateVector::from_bits("0011"), swap12);
    EXPECT_EQ(max_diff(moved, StateVector::from_bits("0101")), 0.0);
    // The middle qubits of 0110 are equal, so the swap fixes it.
    moved = permute_qubits(StateVector::from_bits("0110"), swap12);
    EXPECT_EQ(max_diff(moved, StateVector::from_bits("0110")), 0.0);
}

TEST(Permutation, InterleaveCopies) {
    // A=1, B=1, A'=0, B'=0 reordered to (A, A', B, B').
    const auto p = QubitPermutation::interleave_copies();
    const auto moved = permute_qubits(StateVector::from_bits("1100"), p);
    EXPECT_EQ(max_diff(moved, StateVector::from_bits("1010")), 0.0);
}

TEST(Permutation, RoundTripIsIdentity) {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> src{0, 1, 2, 3, 4};
        std::shuffle(src.begin(), src.end(), gen);
        const QubitPermutation p(src);
        const auto s = random_state(gen, 5);
        EXPECT_LT(max_diff(permute_qubits(permute_qubits(s, p), p.inverse()), s), 1e-15);
    }
}

TEST(Permutation, MatrixAgreesWithApply) {
    std::mt19937_64 gen(3);
    const QubitPermutation p({2, 0, 3, 1});
    const auto s = random_state(gen, 4);
    const Eigen::VectorXcd direct = permutation_matrix(p) * s.amplitudes();
    EXPECT_LT((direct - permute_qubits(s, p).amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Permutation, SizeMismatchThrows) {
    EXPECT_THROW(permute_qubits(StateVector::basis(3, 0), QubitPermutation::identity(4)), std::invalid_argument);
    EXPECT_THROW(QubitPermutation({0, 0}), std::invalid_argument);
}

TEST(Schmidt, PhiPlus) {
    const auto f = schmidt_decompose(states::phi_plus());
    EXPECT_NEAR(f.coeffs[0], std::numbers::sqrt2 / 2, 1e-12);
    EXPECT_NEAR(f.coeffs[1], std::numbers::sqrt2 / 2, 1e-12);
}

TEST(Schmidt, ProductState) {
    const auto f = schmidt_decompose(TwoQubitPureState::make(0.5, 0.5, 0.5, 0.5));
    EXPECT_NEAR(f.coeffs[0], 1.0, 1e-12);
    EXPECT_NEAR(f.coeffs[1], 0.0, 1e-12);
}

TEST(Schmidt, ReconstructsAndMatchesJacobiSvd) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_state(gen, 2);
        const auto f = schmidt_decompose(s);
        EXPECT_LT(max_diff(f.reconstruct(), s), 1e-12);
        EXPECT_LT((f.left_basis.adjoint() * f.left_basis - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
        EXPECT_LT((f.right_basis.adjoint() * f.right_basis - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);

        ComplexMatrix c(2, 2);
        c << s[0], s[1], s[2], s[3];
        const Eigen::JacobiSVD<ComplexMatrix> svd(c);
        EXPECT_NEAR(f.coeffs[0], svd.singularValues()(0), 1e-12);
        EXPECT_NEAR(f.coeffs[1], svd.singularValues()(1), 1e-12);
        EXPECT_GE(f.coeffs[0], f.coeffs[1]);
    }
}

TEST(Schmidt, InvariantUnderLocalUnitaries) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_state(gen, 2);
        const Eigen::VectorXcd rotated = kron(random_unitary(gen), random_unitary(gen)) * s.amplitudes();
        const auto a = schmidt_decompose(s);
        const auto b = schmidt_decompose(StateVector(rotated));
        EXPECT_NEAR(a.coeffs[0], b.coeffs[0], 1e-9);
        EXPECT_NEAR(a.coeffs[1], b.coeffs[1], 1e-9);
    }
}

TEST(Schmidt, RejectsUnnormalizedAndWrongSize) {
    EXPECT_THROW(schmidt_decompose(StateVector({Complex(1), Complex(1), Complex(0), Complex(0)})),
                 std::invalid_argument);
    EXPECT_THROW(schmidt_decompose(StateVector::basis(3, 0)), std::invalid_argument);
}

TEST(SchmidtSpectrum, EmbeddedPhiPlusAcrossCopies) {
    const std::array<int, 2> left{0, 2};
    const auto sv = schmidt_spectrum(states::embedded_phi_plus(), left);
    ASSERT_EQ(sv.size(), 4u);
    EXPECT_NEAR(sv[0] * sv[0], 0.5, 1e-12);
    EXPECT_NEAR(sv[1] * sv[1], 0.5, 1e-12);
    EXPECT_NEAR(sv[2], 0.0, 1e-12);
    EXPECT_NEAR(sv[3], 0.0, 1e-12);
}

TEST(SchmidtSpectrum, AgreesWithClosedFormOnTwoQubits) {
    std::mt19937_64 gen(6);
    const std::array<int, 1> left{0};
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(gen, 2);
        const auto sv = schmidt_spectrum(s, left);
        const auto f = schmidt_decompose(s);
        EXPECT_NEAR(sv[0], f.coeffs[0], 1e-12);
        EXPECT_NEAR(sv[1], f.coeffs[1], 1e-12);
    }
}

TEST(Fidelity, PhaseInsensitive) {
    const auto s = states::phi_plus();
    EXPECT_NEAR(fidelity_up_to_phase(s, std::polar(1.0, 0.7) * s), 1.0, 1e-15);
    EXPECT_THROW(fidelity_up_to_phase(s, StateVector::basis(1, 0)), std::invalid_argument);
}

TEST(Gates, CnotControlsOnFirstQubit) {
    const Eigen::VectorXcd out = gates::cnot() * StateVector::from_bits("10").amplitudes();
    EXPECT_EQ(max_diff(StateVector(out), StateVector::from_bits("11")), 0.0);
}

TEST(Gates, PauliAlgebra) {
    const ComplexMatrix xy = gates::pauli_x() * gates::pauli_y();
    EXPECT_LT((xy - Complex(0, 1) * gates::pauli_z()).norm(), 1e-15);
    EXPECT_LT((gates::hadamard() * gates::hadamard() - gates::identity(1)).norm(), 1e-15);
}
