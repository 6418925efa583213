// Local Kraus operators for universal purification, their two-copy lift, the
// product-state annihilation checks and the Pauli-basis expansion.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "epp/linalg.hpp"

namespace epp {

/// Complex parameters (a, b) of the local operator
///   K = a(|00><01| + |00><10|) + b(|10><01| - |10><10|).
/// Valid when not both zero and 2(|a|^4 + |b|^4) <= 1.
class KrausParams {
public:
    /// Throws std::invalid_argument when the pair is outside the valid domain.
    KrausParams(Complex a, Complex b);

    /// a = b = sqrt(2)/2, the optimal choice.
    static KrausParams optimal();

    /// True when (a, b) satisfies the domain constraints (slack 1e-12).
    static bool admissible(Complex a, Complex b);

    Complex a() const { return a_; }
    Complex b() const { return b_; }

    /// 2(|a|^4 + |b|^4); at most one.
    double constraint_value() const;

    /// 2 * | |a|^4 - |b|^4 |, in [0, 1].
    double f() const;

    /// a == 0 or b == 0: the map only produces product outputs.
    bool degenerate() const;

private:
    Complex a_;
    Complex b_;
};

double f_parameter(double abs_a, double abs_b);
double constraint_value(double abs_a, double abs_b);

/// Non-empty family of equally shaped square operators with
/// sum_i K_i^dagger K_i <= 1.
class KrausMap {
public:
    /// Throws std::invalid_argument on an empty list, mismatched shapes or a
    /// violated trace-non-increasing condition.
    explicit KrausMap(std::vector<ComplexMatrix> ops);

    /// Same as the constructor, without the completeness check.
    static KrausMap unchecked(std::vector<ComplexMatrix> ops);

    /// Smallest eigenvalue of 1 - sum_i K_i^dagger K_i.
    static double completeness_margin(const std::vector<ComplexMatrix>& ops);

    const std::vector<ComplexMatrix>& ops() const { return ops_; }
    int acts_on() const { return acts_on_; }
    double completeness_margin() const { return completeness_margin(ops_); }

    /// Appends the failure branch sqrt(1 - sum K^dagger K), making the map
    /// trace preserving.
    KrausMap completed() const;

    /// Sum of the branch probabilities on a pure input.
    double success_probability(const StateVector& s) const;

private:
    struct Unchecked {};
    KrausMap(std::vector<ComplexMatrix> ops, Unchecked);

    std::vector<ComplexMatrix> ops_;
    int acts_on_ = 0;
};

/// 4x4 local operator on (A, A') or (B, B').
ComplexMatrix build_kraus(const KrausParams& p);

/// (H (x) |0><0|) CNOT (1 (x) sigma_x).
ComplexMatrix kalman_kraus();

/// P^{-1} (K (x) K) P acting on (A, B, A', B') registers, where P reorders
/// (A, B, A', B') to (A, A', B, B'). Throws std::invalid_argument unless K is 4x4.
ComplexMatrix lift_to_copies(const ComplexMatrix& k);

struct KrausOutput {
    StateVector state;   // unnormalized
    double probability;  // squared norm of state
};

/// Throws std::invalid_argument on a shape mismatch.
KrausOutput apply_kraus(const ComplexMatrix& op, const StateVector& s);

struct ConstraintReport {
    struct Residual {
        std::string label;
        double norm;
    };
    std::vector<Residual> residuals;
    bool passed = false;

    double max_residual() const;
};

/// The eight (A, B, A', B') vectors that a universal branch must annihilate:
/// contributions of product inputs to two copies.
std::vector<std::pair<std::string, StateVector>> kill_vectors();

/// Residual ||M v|| for every kill vector; passes when all are <= kTolerance.
ConstraintReport check_universality_constraints(const ComplexMatrix& m);

/// Index into (sigma_x, sigma_y, sigma_z, 1).
enum class Pauli { X = 0, Y = 1, Z = 2, I = 3 };

const ComplexMatrix& pauli(Pauli p);

/// K = sum_kl r_kl sigma_k (x) sigma_l with r_kl = Tr[(sigma_k (x) sigma_l)^dagger K] / 4.
struct PauliExpansion {
    std::array<std::array<Complex, 4>, 4> r{};

    Complex operator()(Pauli k, Pauli l) const {
        return r[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    }

    ComplexMatrix reconstruct() const;
};

PauliExpansion pauli_expand(const ComplexMatrix& k);

/// Residuals of the Pauli-coefficient relations forced by the annihilation
/// constraints, plus those of the printed solution branch.
struct PauliRelationCheck {
    std::vector<std::pair<std::string, double>> residuals;
    double max_residual() const;
};

PauliRelationCheck check_pauli_relations(const PauliExpansion& e, const KrausParams& p);

}  // namespace epp
