#include "epp/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace epp {

namespace {

constexpr double kBoundTolerance = 1e-9;

// Below this the post-selected vector is treated as the zero vector.
constexpr double kZeroProbability = 1e-300;

// Indices of |AB>|00>_{A'B'} in (A, B, A', B') order.
constexpr std::array<std::size_t, 4> kGarbageZero = {0b0000, 0b0100, 0b1000, 0b1100};

ProtocolResult project_garbage(const StateVector& out) {
    double kept = 0.0;
    Eigen::VectorXcd reduced(4);
    for (std::size_t i = 0; i < 4; ++i) {
        reduced(static_cast<Eigen::Index>(i)) = out[kGarbageZero[i]];
        kept += std::norm(out[kGarbageZero[i]]);
    }
    const double leaked = out.norm_squared() - kept;
    if (leaked > kTolerance) throw std::logic_error("Kraus output has weight outside |00> on the auxiliary pair");

    ProtocolResult result;
    result.success_prob = kept;
    result.stage_probs = {kept};
    if (kept > kZeroProbability) result.output = StateVector(std::move(reduced)).normalized();
    return result;
}

ProtocolResult run_stage(const ComplexMatrix& m, const TwoQubitPureState& psi) {
    const StateVector s = psi.to_vector();
    return project_garbage(apply_kraus(m, tensor(s, s)).state);
}

void require_schmidt_basis(const TwoQubitPureState& psi) {
    if (std::abs(psi.c2) > kTolerance || std::abs(psi.c3) > kTolerance)
        throw std::invalid_argument("second stage needs a state in the {|00>, |11>} Schmidt basis");
    if (std::abs(psi.norm_squared() - 1.0) > kTolerance)
        throw std::invalid_argument("second stage needs a normalized state");
}

}  // namespace

BoundReport compare_to_bound(double achieved, double bound) {
    return {achieved, bound, std::abs(achieved - bound) <= kBoundTolerance, achieved < bound,
            achieved <= bound + kBoundTolerance};
}

SchmidtAmplitudes stage1_amplitudes(const TwoQubitPureState& psi, const KrausParams& p) {
    const Complex x = psi.c1 * psi.c4;
    const Complex y = psi.c2 * psi.c3;
    return {2.0 * p.a() * p.a() * (x + y), 2.0 * p.b() * p.b() * (x - y)};
}

// ------------------------------------------------------- PurificationPipeline

PurificationPipeline::PurificationPipeline(const KrausParams& first_stage)
    : params_(first_stage),
      first_(lift_to_copies(build_kraus(first_stage))),
      second_(lift_to_copies(build_kraus(KrausParams::optimal()))) {}

ProtocolResult PurificationPipeline::stage1(const TwoQubitPureState& psi) const { return run_stage(first_, psi); }

ProtocolResult PurificationPipeline::stage2(const TwoQubitPureState& schmidt_state) const {
    require_schmidt_basis(schmidt_state);
    return run_stage(second_, schmidt_state);
}

ProtocolResult PurificationPipeline::run(const TwoQubitPureState& psi) const {
    // Copies (1, 2) and (3, 4) are processed independently by the same map.
    const ProtocolResult first = stage1(psi);
    const ProtocolResult second = stage1(psi);

    ProtocolResult result;
    result.stage_probs = {first.success_prob, second.success_prob};
    if (!first.output_defined() || !second.output_defined()) {
        result.stage_probs.push_back(0.0);
        return result;
    }
    // Both copies hold the same normalized state; stage 2 consumes two copies.
    const auto schmidt = TwoQubitPureState::from_vector(*first.output);
    const ProtocolResult last = stage2(schmidt);
    result.stage_probs.push_back(last.success_prob);
    result.success_prob = first.success_prob * second.success_prob * last.success_prob;
    if (result.success_prob > kZeroProbability) result.output = last.output;
    return result;
}

ProtocolResult stage1(const TwoQubitPureState& psi, const KrausParams& p) {
    return run_stage(lift_to_copies(build_kraus(p)), psi);
}

ProtocolResult stage2(const TwoQubitPureState& schmidt_state) {
    require_schmidt_basis(schmidt_state);
    return run_stage(lift_to_copies(build_kraus(KrausParams::optimal())), schmidt_state);
}

ProtocolResult full_pipeline(const TwoQubitPureState& psi, const KrausParams& p) {
    return PurificationPipeline(p).run(psi);
}

// ---------------------------------------------------------------- bounds

double bound_theorem1(Complex alpha, Complex beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTolerance)
        throw std::invalid_argument("Schmidt amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    return 2.0 * std::norm(alpha * beta);
}

double bound_theorem2(const TwoQubitPureState& psi) {
    const double s = std::abs(psi.c1 * psi.c4) + std::abs(psi.c2 * psi.c3);
    return 2.0 * s * s;
}

double phase_term(const TwoQubitPureState& psi) {
    const Complex z = psi.c1 * psi.c1 * psi.c4 * psi.c4 * std::conj(psi.c2 * psi.c2) * std::conj(psi.c3 * psi.c3);
    return z.real();
}

double bound_theorem3(const TwoQubitPureState& psi) {
    const double x = std::norm(psi.c1 * psi.c4);  // |c1 c4|^2
    const double y = std::norm(psi.c2 * psi.c3);  // |c2 c3|^2
    const double value = 2.0 * y * y + 2.0 * x * x - 4.0 * phase_term(psi);
    // Equals 2|(c1c4)^2 - (c2c3)^2|^2 >= 0; clip cancellation noise.
    return std::max(0.0, value);
}

double kalman_stage1_prob(const TwoQubitPureState& psi) {
    return 2.0 * (std::norm(psi.c2 * psi.c3) + std::norm(psi.c1 * psi.c4));
}

std::optional<double> kalman_stage2_prob(const TwoQubitPureState& psi) {
    const double denom_root = std::norm(psi.c2 * psi.c3) + std::norm(psi.c1 * psi.c4);
    if (denom_root == 0.0) return std::nullopt;
    const Complex x = psi.c1 * psi.c4;
    const Complex y = psi.c2 * psi.c3;
    return std::norm(x * x - y * y) / (2.0 * denom_root * denom_root);
}

}  // namespace epp
