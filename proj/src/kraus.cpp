#include "epp/kraus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace epp {

namespace {

constexpr double kParamSlack = 1e-12;

const Complex kI{0.0, 1.0};

}  // namespace

// --------------------------------------------------------------- KrausParams

double constraint_value(double abs_a, double abs_b) {
    return 2.0 * (std::pow(abs_a, 4) + std::pow(abs_b, 4));
}

double f_parameter(double abs_a, double abs_b) {
    return 2.0 * std::abs(std::pow(abs_a, 4) - std::pow(abs_b, 4));
}

bool KrausParams::admissible(Complex a, Complex b) {
    if (a == Complex{} && b == Complex{}) return false;
    return epp::constraint_value(std::abs(a), std::abs(b)) <= 1.0 + kParamSlack;
}

KrausParams::KrausParams(Complex a, Complex b) : a_(a), b_(b) {
    if (a == Complex{} && b == Complex{})
        throw std::invalid_argument("Kraus parameters a and b cannot both be zero");
    if (epp::constraint_value(std::abs(a), std::abs(b)) > 1.0 + kParamSlack)
        throw std::invalid_argument("Kraus parameters violate 2(|a|^4 + |b|^4) <= 1");
}

KrausParams KrausParams::optimal() {
    const double h = std::sqrt(2.0) / 2.0;
    return {h, h};
}

double KrausParams::constraint_value() const { return epp::constraint_value(std::abs(a_), std::abs(b_)); }

double KrausParams::f() const { return f_parameter(std::abs(a_), std::abs(b_)); }

bool KrausParams::degenerate() const { return a_ == Complex{} || b_ == Complex{}; }

// ------------------------------------------------------------------ KrausMap

KrausMap::KrausMap(std::vector<ComplexMatrix> ops, Unchecked) : ops_(std::move(ops)) {
    if (ops_.empty()) throw std::invalid_argument("a Kraus map needs at least one operator");
    const auto rows = ops_.front().rows();
    const auto cols = ops_.front().cols();
    if (rows != cols) throw std::invalid_argument("Kraus operators must be square");
    for (const auto& op : ops_)
        if (op.rows() != rows || op.cols() != cols)
            throw std::invalid_argument("Kraus operators must share one shape");
    acts_on_ = StateVector(Eigen::VectorXcd::Zero(cols)).num_qubits();
}

KrausMap::KrausMap(std::vector<ComplexMatrix> ops) : KrausMap(std::move(ops), Unchecked{}) {
    if (completeness_margin(ops_) < -kTolerance)
        throw std::invalid_argument("Kraus map is not trace non-increasing");
}

KrausMap KrausMap::unchecked(std::vector<ComplexMatrix> ops) { return KrausMap(std::move(ops), Unchecked{}); }

double KrausMap::completeness_margin(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return 1.0;
    const auto dim = ops.front().cols();
    ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
    for (const auto& op : ops) gram += op.adjoint() * op;
    const ComplexMatrix defect = ComplexMatrix::Identity(dim, dim) - gram;
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(defect, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

KrausMap KrausMap::completed() const {
    const auto dim = ops_.front().cols();
    ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
    for (const auto& op : ops_) gram += op.adjoint() * op;
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(ComplexMatrix::Identity(dim, dim) - gram);
    // Clip rounding noise below zero before the square root.
    const Eigen::VectorXd evals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix failure = solver.eigenvectors() * evals.asDiagonal() * solver.eigenvectors().adjoint();
    auto ops = ops_;
    ops.push_back(std::move(failure));
    return KrausMap(std::move(ops));
}

double KrausMap::success_probability(const StateVector& s) const {
    double total = 0.0;
    for (const auto& op : ops_) total += apply_kraus(op, s).probability;
    return total;
}

// ---------------------------------------------------------------- operators

ComplexMatrix build_kraus(const KrausParams& p) {
    // Basis order |00>, |01>, |10>, |11>.
    ComplexMatrix k = ComplexMatrix::Zero(4, 4);
    k(0, 1) = p.a();
    k(0, 2) = p.a();
    k(2, 1) = p.b();
    k(2, 2) = -p.b();
    return k;
}

ComplexMatrix kalman_kraus() {
    const ComplexMatrix project0 = gates::outer(1, 0, 0);
    return kron(gates::hadamard(), project0) * gates::cnot() * kron(gates::identity(1), gates::pauli_x());
}

ComplexMatrix lift_to_copies(const ComplexMatrix& k) {
    if (k.rows() != 4 || k.cols() != 4) throw std::invalid_argument("lift expects a 4x4 local operator");
    static const ComplexMatrix perm = permutation_matrix(QubitPermutation::interleave_copies());
    return perm.adjoint() * kron(k, k) * perm;
}

KrausOutput apply_kraus(const ComplexMatrix& op, const StateVector& s) {
    if (op.cols() != static_cast<Eigen::Index>(s.dim()))
        throw std::invalid_argument("operator and state dimensions differ");
    if (op.rows() != op.cols()) throw std::invalid_argument("Kraus operator must be square");
    StateVector out(Eigen::VectorXcd(op * s.amplitudes()));
    const double p = out.norm_squared();
    return {std::move(out), p};
}

// -------------------------------------------------------------- constraints

double ConstraintReport::max_residual() const {
    double m = 0.0;
    for (const auto& r : residuals) m = std::max(m, r.norm);
    return m;
}

std::vector<std::pair<std::string, StateVector>> kill_vectors() {
    const auto v = [](std::string_view bits) { return StateVector::from_bits(bits); };
    return {
        {"|0000>", v("0000")},
        {"|0101>", v("0101")},
        {"|1010>", v("1010")},
        {"|1111>", v("1111")},
        {"|0001>+|0100>", v("0001") + v("0100")},
        {"|0010>+|1000>", v("0010") + v("1000")},
        {"|0111>+|1101>", v("0111") + v("1101")},
        {"|1011>+|1110>", v("1011") + v("1110")},
    };
}

ConstraintReport check_universality_constraints(const ComplexMatrix& m) {
    ConstraintReport report;
    if (m.rows() != 16 || m.cols() != 16) {
        report.residuals.push_back({"shape", 1.0});
        return report;
    }
    for (auto& [label, vec] : kill_vectors())
        report.residuals.push_back({label, (m * vec.amplitudes()).norm()});
    report.passed = report.max_residual() <= kTolerance;
    return report;
}

// ------------------------------------------------------------- Pauli basis

const ComplexMatrix& pauli(Pauli p) {
    static const std::array<ComplexMatrix, 4> basis = {gates::pauli_x(), gates::pauli_y(), gates::pauli_z(),
                                                       gates::identity(1)};
    return basis[static_cast<std::size_t>(p)];
}

PauliExpansion pauli_expand(const ComplexMatrix& k) {
    if (k.rows() != 4 || k.cols() != 4) throw std::invalid_argument("Pauli expansion expects a 4x4 operator");
    PauliExpansion e;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const ComplexMatrix basis = kron(pauli(static_cast<Pauli>(i)), pauli(static_cast<Pauli>(j)));
            e.r[i][j] = (basis.adjoint() * k).trace() / 4.0;
        }
    return e;
}

ComplexMatrix PauliExpansion::reconstruct() const {
    ComplexMatrix k = ComplexMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            k += r[i][j] * kron(pauli(static_cast<Pauli>(i)), pauli(static_cast<Pauli>(j)));
    return k;
}

double PauliRelationCheck::max_residual() const {
    double m = 0.0;
    for (const auto& [label, value] : residuals) m = std::max(m, value);
    return m;
}

PauliRelationCheck check_pauli_relations(const PauliExpansion& e, const KrausParams& p) {
    using enum Pauli;
    PauliRelationCheck check;
    const auto add = [&](std::string label, Complex lhs, Complex rhs) {
        check.residuals.emplace_back(std::move(label), std::abs(lhs - rhs));
    };
    // Forced by annihilating the product-state vectors.
    add("r21 = -r12", e(Y, X), -e(X, Y));
    add("r22 = r11", e(Y, Y), e(X, X));
    add("r23 = i r14", e(Y, Z), kI * e(X, I));
    add("r24 = i r13", e(Y, I), kI * e(X, Z));
    add("r41 = -i r32", e(I, X), -kI * e(Z, Y));
    add("r42 = i r31", e(I, Y), kI * e(Z, X));
    add("r43 = -r34", e(I, Z), -e(Z, I));
    add("r44 = -r33", e(I, I), -e(Z, Z));
    // Solution branch with |aux> = |00>.
    add("r11 = r34", e(X, X), e(Z, I));
    add("r12 = i r34", e(X, Y), kI * e(Z, I));
    add("r13 = r14", e(X, Z), e(X, I));
    add("r31 = r14", e(Z, X), e(X, I));
    add("r32 = i r14", e(Z, Y), kI * e(X, I));
    add("r33 = r34", e(Z, Z), e(Z, I));
    add("r14 = a/4", e(X, I), p.a() / 4.0);
    add("r34 = b/4", e(Z, I), p.b() / 4.0);
    return check;
}

}  // namespace epp
