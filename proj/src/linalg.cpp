#include "epp/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace epp {

namespace {

int qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim))
        throw std::invalid_argument("state dimension must be a power of two, got " +
                                    std::to_string(dim));
    const int n = std::countr_zero(dim);
    if (n > kMaxQubits)
        throw std::invalid_argument("register of " + std::to_string(n) +
                                    " qubits exceeds the dense limit");
    return n;
}

// Unit vector orthogonal to the 2-vector v.
Eigen::Vector2cd orthogonal_complement(const Eigen::Vector2cd& v) {
    return {-std::conj(v(1)), std::conj(v(0))};
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(Eigen::VectorXcd amps)
    : amps_(std::move(amps)), num_qubits_(qubits_for_dim(static_cast<std::size_t>(amps_.size()))) {}

StateVector::StateVector(std::initializer_list<Complex> amps)
    : StateVector(Eigen::Map<const Eigen::VectorXcd>(amps.begin(),
                                                     static_cast<Eigen::Index>(amps.size()))) {}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    if (num_qubits < 0 || num_qubits > kMaxQubits)
        throw std::invalid_argument("qubit count out of range");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::from_bits(std::string_view bits) {
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must contain only 0/1");
        index = (index << 1) | static_cast<std::size_t>(ch - '0');
    }
    return basis(static_cast<int>(bits.size()), index);
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = amps_.norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    return StateVector(Eigen::VectorXcd(amps_ / n));
}

StateVector StateVector::operator+(const StateVector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch in state sum");
    return StateVector(Eigen::VectorXcd(amps_ + other.amps_));
}

StateVector operator*(Complex scale, const StateVector& s) {
    return StateVector(Eigen::VectorXcd(scale * s.amps_));
}

// ---------------------------------------------------------- TwoQubitPureState

TwoQubitPureState TwoQubitPureState::make(Complex c1, Complex c2, Complex c3, Complex c4) {
    TwoQubitPureState psi{c1, c2, c3, c4};
    if (std::abs(psi.norm_squared() - 1.0) > kTolerance)
        throw std::invalid_argument("two-qubit state is not normalized");
    return psi;
}

TwoQubitPureState TwoQubitPureState::from_vector(const StateVector& s) {
    if (s.dim() != 4) throw std::invalid_argument("expected a two-qubit state");
    return make(s[0], s[1], s[2], s[3]);
}

TwoQubitPureState TwoQubitPureState::schmidt_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    return {std::sqrt(lambda), 0.0, 0.0, std::sqrt(1.0 - lambda)};
}

double TwoQubitPureState::norm_squared() const {
    return std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4);
}

StateVector TwoQubitPureState::to_vector() const { return StateVector{c1, c2, c3, c4}; }

// ---------------------------------------------------------------- SchmidtForm

StateVector SchmidtForm::reconstruct() const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(4);
    for (int k = 0; k < 2; ++k) {
        const Eigen::VectorXcd u = left_basis.col(k);
        const Eigen::VectorXcd v = right_basis.col(k);
        out += coeffs[static_cast<std::size_t>(k)] * Eigen::kroneckerProduct(u, v).eval();
    }
    return StateVector(std::move(out));
}

// ----------------------------------------------------------- QubitPermutation

QubitPermutation::QubitPermutation(std::vector<int> source) : source_(std::move(source)) {
    std::vector<bool> seen(source_.size(), false);
    for (int q : source_) {
        if (q < 0 || static_cast<std::size_t>(q) >= source_.size() || seen[static_cast<std::size_t>(q)])
            throw std::invalid_argument("not a permutation of qubit indices");
        seen[static_cast<std::size_t>(q)] = true;
    }
}

QubitPermutation QubitPermutation::identity(int n) {
    std::vector<int> src(static_cast<std::size_t>(n));
    std::iota(src.begin(), src.end(), 0);
    return QubitPermutation(std::move(src));
}

QubitPermutation QubitPermutation::swap(int n, int i, int j) {
    auto p = identity(n);
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("swap index out of range");
    std::swap(p.source_[static_cast<std::size_t>(i)], p.source_[static_cast<std::size_t>(j)]);
    return p;
}

QubitPermutation QubitPermutation::interleave_copies() { return QubitPermutation({0, 2, 1, 3}); }

QubitPermutation QubitPermutation::inverse() const {
    std::vector<int> inv(source_.size());
    for (std::size_t j = 0; j < source_.size(); ++j) inv[static_cast<std::size_t>(source_[j])] = static_cast<int>(j);
    return QubitPermutation(std::move(inv));
}

std::size_t QubitPermutation::map_index(std::size_t index) const {
    const int n = size();
    std::size_t out = 0;
    for (int j = 0; j < n; ++j) {
        const std::size_t bit = (index >> (n - 1 - source_[static_cast<std::size_t>(j)])) & 1u;
        out |= bit << (n - 1 - j);
    }
    return out;
}

// ----------------------------------------------------------------- operations

StateVector tensor(const StateVector& a, const StateVector& b) {
    return StateVector(Eigen::VectorXcd(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes())));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

StateVector permute_qubits(const StateVector& s, const QubitPermutation& p) {
    if (p.size() != s.num_qubits())
        throw std::invalid_argument("permutation acts on " + std::to_string(p.size()) +
                                    " qubits but the state has " + std::to_string(s.num_qubits()));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) out(static_cast<Eigen::Index>(p.map_index(i))) = s[i];
    return StateVector(std::move(out));
}

ComplexMatrix permutation_matrix(const QubitPermutation& p) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << p.size());
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        m(static_cast<Eigen::Index>(p.map_index(static_cast<std::size_t>(i))), i) = 1.0;
    return m;
}

SchmidtForm schmidt_decompose(const StateVector& s) {
    if (s.num_qubits() != 2)
        throw std::invalid_argument("closed-form Schmidt decomposition needs a two-qubit state");
    if (!s.is_normalized()) throw std::invalid_argument("Schmidt decomposition of an unnormalized state");

    // psi = sum_jk C_jk |j>|k>  =>  C = U diag(s) V^T.
    Eigen::Matrix2cd c;
    c << s[0], s[1], s[2], s[3];

    // Eigen-decomposition of H = C C^dagger, closed form.
    const Eigen::Matrix2cd h = c * c.adjoint();
    const double p = h(0, 0).real();
    const double r = h(1, 1).real();
    const Complex q = h(0, 1);
    const double trace = p + r;
    const double det_abs = std::abs(c.determinant());
    const double disc = std::sqrt(std::max(0.0, (p - r) * (p - r) + 4.0 * std::norm(q)));
    const double mu1 = 0.5 * (trace + disc);

    const double s1 = std::sqrt(mu1);
    const double s2 = s1 > 0.0 ? std::min(s1, det_abs / s1) : 0.0;

    Eigen::Vector2cd u1;
    const Eigen::Vector2cd cand_a(mu1 - r, std::conj(q));
    const Eigen::Vector2cd cand_b(q, mu1 - p);
    const double na = cand_a.norm();
    const double nb = cand_b.norm();
    if (std::max(na, nb) <= 1e-14 * std::max(1.0, trace))
        u1 = Eigen::Vector2cd(1.0, 0.0);  // H is a multiple of the identity
    else
        u1 = na >= nb ? Eigen::Vector2cd(cand_a / na) : Eigen::Vector2cd(cand_b / nb);
    const Eigen::Vector2cd u2 = orthogonal_complement(u1);

    // v_k = C^T conj(u_k) / s_k; v_2 is fixed as the complement of v_1 with the
    // phase that reproduces C^T conj(u_2).
    const Eigen::Vector2cd w1 = c.transpose() * u1.conjugate();
    const Eigen::Vector2cd v1 = s1 > 0.0 ? Eigen::Vector2cd(w1 / w1.norm()) : Eigen::Vector2cd(1.0, 0.0);
    Eigen::Vector2cd v2 = orthogonal_complement(v1);
    const Complex overlap = v2.dot(c.transpose() * u2.conjugate());
    if (std::abs(overlap) > 0.0) v2 *= overlap / std::abs(overlap);

    SchmidtForm form;
    form.coeffs = {s1, s2};
    form.left_basis = ComplexMatrix(2, 2);
    form.left_basis << u1, u2;
    form.right_basis = ComplexMatrix(2, 2);
    form.right_basis << v1, v2;
    return form;
}

SchmidtForm schmidt_decompose(const TwoQubitPureState& psi) { return schmidt_decompose(psi.to_vector()); }

std::vector<double> schmidt_spectrum(const StateVector& s, std::span<const int> left_qubits) {
    const int n = s.num_qubits();
    const auto k = static_cast<int>(left_qubits.size());
    if (k <= 0 || k >= n) throw std::invalid_argument("bipartition needs two non-empty registers");

    std::vector<int> order(left_qubits.begin(), left_qubits.end());
    for (int q = 0; q < n; ++q)
        if (std::find(left_qubits.begin(), left_qubits.end(), q) == left_qubits.end()) order.push_back(q);
    const StateVector moved = permute_qubits(s, QubitPermutation(std::move(order)));

    const Eigen::Index rows = Eigen::Index{1} << k;
    const Eigen::Index cols = Eigen::Index{1} << (n - k);
    // Row-major reshape: index = row * cols + col.
    ComplexMatrix c(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) c(i, j) = moved[static_cast<std::size_t>(i * cols + j)];

    const Eigen::JacobiSVD<ComplexMatrix> svd(c);
    const Eigen::VectorXd sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity of states with different dimensions");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

// ---------------------------------------------------------------------- gates

namespace gates {

ComplexMatrix identity(int num_qubits) {
    const auto dim = Eigen::Index{1} << num_qubits;
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << 0.0, -i, i, 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m << h, h, h, -h;
    return m;
}

ComplexMatrix cnot() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

ComplexMatrix outer(int num_qubits, std::size_t row, std::size_t col) {
    ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index{1} << num_qubits, Eigen::Index{1} << num_qubits);
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    return m;
}

}  // namespace gates

namespace states {

StateVector phi_plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return StateVector{h, 0.0, 0.0, h};
}

StateVector embedded_phi_plus() { return tensor(phi_plus(), StateVector::basis(2, 0)); }

}  // namespace states

}  // namespace epp
