// Two-stage universal purification: two copies of an arbitrary pure state to
// a state in the {|00>, |11>} Schmidt basis, then two copies of that state to
// |phi+>. Also the closed-form success probabilities and optimality bounds.

#pragma once

#include <optional>
#include <vector>

#include "epp/kraus.hpp"
#include "epp/linalg.hpp"

namespace epp {

struct ProtocolResult {
    double success_prob = 0.0;
    /// Normalized post-selected two-qubit state; empty when success_prob is 0.
    std::optional<StateVector> output;
    std::vector<double> stage_probs;

    bool output_defined() const { return output.has_value(); }
};

/// alpha'|00> + beta'|11>, the unnormalized first-stage output.
struct SchmidtAmplitudes {
    Complex alpha;
    Complex beta;
};

struct BoundReport {
    double achieved = 0.0;
    double bound = 0.0;
    bool saturated = false;  // |achieved - bound| <= 1e-9
    bool strict = false;     // achieved < bound
    bool respected = false;  // achieved <= bound + 1e-9
};

BoundReport compare_to_bound(double achieved, double bound);

/// Closed-form first-stage amplitudes:
///   alpha' = 2a^2 (c1 c4 + c2 c3),  beta' = 2b^2 (c1 c4 - c2 c3).
SchmidtAmplitudes stage1_amplitudes(const TwoQubitPureState& psi, const KrausParams& p);

/// Applies K (x) K to |psi>^{(x)2} and projects the (A', B') register on |00>.
/// Throws std::logic_error if weight outside |00>_{A'B'} exceeds kTolerance.
ProtocolResult stage1(const TwoQubitPureState& psi, const KrausParams& p);

/// Second stage with a = b = sqrt(2)/2. Throws std::invalid_argument unless
/// |c2|, |c3| <= kTolerance.
ProtocolResult stage2(const TwoQubitPureState& schmidt_state);

/// Precomputed operators for repeated runs with fixed first-stage parameters.
class PurificationPipeline {
public:
    explicit PurificationPipeline(const KrausParams& first_stage);

    ProtocolResult stage1(const TwoQubitPureState& psi) const;
    ProtocolResult stage2(const TwoQubitPureState& schmidt_state) const;

    /// Stage 1 on copies (1, 2) and (3, 4), then stage 2 on the two outputs.
    /// stage_probs = {P', P', P''}; success_prob = P'^2 P''.
    ProtocolResult run(const TwoQubitPureState& psi) const;

    const KrausParams& params() const { return params_; }

private:
    KrausParams params_;
    ComplexMatrix first_;
    ComplexMatrix second_;
};

ProtocolResult full_pipeline(const TwoQubitPureState& psi, const KrausParams& p = KrausParams::optimal());

/// 2 |alpha beta|^2. Throws std::invalid_argument unless |alpha|^2 + |beta|^2 = 1.
double bound_theorem1(Complex alpha, Complex beta);

/// 2 (|c1 c4| + |c2 c3|)^2, the strict upper bound on the first-stage probability.
double bound_theorem2(const TwoQubitPureState& psi);

/// 2|c2^4 c3^4| + 2|c1^4 c4^4| - 4 Re[c1^2 c4^2 conj(c2)^2 conj(c3)^2].
double bound_theorem3(const TwoQubitPureState& psi);

/// First stage of the Kalman protocol: 2 (|c2 c3|^2 + |c1 c4|^2).
double kalman_stage1_prob(const TwoQubitPureState& psi);

/// |(c1c4)^2 - (c2c3)^2|^2 / (2 (|c2c3|^2 + |c1c4|^2)^2); empty when the
/// first stage has zero probability (0/0).
std::optional<double> kalman_stage2_prob(const TwoQubitPureState& psi);

/// Re[c1^2 c4^2 conj(c2)^2 conj(c3)^2] = x1 x2 x3 x4 cos(eta).
double phase_term(const TwoQubitPureState& psi);

}  // namespace epp
