// Dense complex state vectors and operators for small qubit registers.
//
// Index convention: big-endian, qubit 0 is the most significant bit of the
// amplitude index. Two copies of a two-qubit state are stored in register
// order (A, B, A', B').

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace epp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Absolute tolerance used for every analytic identity in the library.
inline constexpr double kTolerance = 1e-10;

/// Largest register handled by the dense routines (2^8 amplitudes).
inline constexpr int kMaxQubits = 8;

class StateVector {
public:
    StateVector() = default;

    /// Takes ownership of the amplitudes; the length must be a power of two.
    explicit StateVector(Eigen::VectorXcd amps);
    StateVector(std::initializer_list<Complex> amps);

    static StateVector basis(int num_qubits, std::size_t index);

    /// Basis state from a bitstring such as "0110" (qubit 0 first).
    static StateVector from_bits(std::string_view bits);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    int num_qubits() const { return num_qubits_; }

    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    Complex& operator[](std::size_t i) { return amps_(static_cast<Eigen::Index>(i)); }

    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    double norm_squared() const { return amps_.squaredNorm(); }
    bool is_normalized(double tol = kTolerance) const;

    /// Copy scaled to unit norm. Throws std::domain_error on the zero vector.
    StateVector normalized() const;

    StateVector operator+(const StateVector& other) const;
    friend StateVector operator*(Complex scale, const StateVector& s);

private:
    Eigen::VectorXcd amps_;
    int num_qubits_ = 0;
};

/// c1|00> + c2|01> + c3|10> + c4|11>.
struct TwoQubitPureState {
    Complex c1, c2, c3, c4;

    /// Validating factory; throws std::invalid_argument unless the norm is 1
    /// within kTolerance.
    static TwoQubitPureState make(Complex c1, Complex c2, Complex c3, Complex c4);

    /// From a 4-dimensional StateVector (validated as in make()).
    static TwoQubitPureState from_vector(const StateVector& s);

    /// sqrt(lambda)|00> + sqrt(1 - lambda)|11>.
    static TwoQubitPureState schmidt_lambda(double lambda);

    std::array<Complex, 4> amplitudes() const { return {c1, c2, c3, c4}; }
    double norm_squared() const;
    StateVector to_vector() const;
};

/// Schmidt form of a two-qubit state across the A|B cut.
struct SchmidtForm {
    std::array<double, 2> coeffs{};   // non-increasing, squares sum to 1
    ComplexMatrix left_basis;         // 2x2 unitary, column k is |u_k>
    ComplexMatrix right_basis;        // 2x2 unitary, column k is |v_k>

    /// sum_k coeffs[k] |u_k> (x) |v_k>.
    StateVector reconstruct() const;
};

/// Qubit relabelling. Output qubit j carries input qubit source[j].
class QubitPermutation {
public:
    explicit QubitPermutation(std::vector<int> source);

    static QubitPermutation identity(int n);
    static QubitPermutation swap(int n, int i, int j);

    /// (A, B, A', B') -> (A, A', B, B').
    static QubitPermutation interleave_copies();

    int size() const { return static_cast<int>(source_.size()); }
    int source(int j) const { return source_[static_cast<std::size_t>(j)]; }
    QubitPermutation inverse() const;

    /// Image of a basis index under the relabelling.
    std::size_t map_index(std::size_t index) const;

private:
    std::vector<int> source_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws std::invalid_argument when the permutation size differs from the
/// register size.
StateVector permute_qubits(const StateVector& s, const QubitPermutation& p);

/// The 2^n x 2^n permutation matrix P with P * s == permute_qubits(s, p).
ComplexMatrix permutation_matrix(const QubitPermutation& p);

/// Closed-form 2x2 singular value decomposition of a two-qubit state.
/// Only the single-qubit | single-qubit cut is supported. Throws
/// std::invalid_argument for other registers or unnormalized input.
SchmidtForm schmidt_decompose(const StateVector& s);
SchmidtForm schmidt_decompose(const TwoQubitPureState& psi);

/// Singular values (non-increasing) of the coefficient matrix of s across
/// an arbitrary bipartition, left register given by qubit indices in order.
/// General-size SVD; used for embedded targets such as |phi+>|00>.
std::vector<double> schmidt_spectrum(const StateVector& s, std::span<const int> left_qubits);

/// |<a|b>|^2. Throws std::invalid_argument on dimension mismatch.
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

namespace gates {
ComplexMatrix identity(int num_qubits);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
/// Control on the first (most significant) qubit.
ComplexMatrix cnot();
/// |row><col| on a register of the given size.
ComplexMatrix outer(int num_qubits, std::size_t row, std::size_t col);
}  // namespace gates

namespace states {
StateVector phi_plus();
/// |phi+>_{AB} (x) |00>_{A'B'} in (A, B, A', B') order.
StateVector embedded_phi_plus();
}  // namespace states

}  // namespace epp
