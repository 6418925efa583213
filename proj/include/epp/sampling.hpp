// Haar-random two-qubit states, the induced Schmidt-coefficient density,
// Dirichlet moments and seeded Monte Carlo averages of success probabilities.
//
// Reproducibility: sample i of a run with seed s draws from its own stream
// CounterRng(s, i), and results are reduced in index order, so estimates are
// bitwise identical for any worker count.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "epp/kraus.hpp"
#include "epp/linalg.hpp"

namespace epp {

/// SplitMix64 output function over a (seed, stream) keyed counter. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::string_view kAlgorithm = "splitmix64-counter/v1";

    CounterRng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open_left();
    /// Standard normal (Box-Muller, one value per call pair cached).
    double normal();

private:
    std::uint64_t state_;
    std::optional<double> spare_;
};

std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for an independent campaign derived from a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

struct HaarSample {
    TwoQubitPureState state;
    std::array<double, 4> x{};      // |c_i|^2
    std::array<double, 4> theta{};  // arg(c_i) in [0, 2 pi)

    /// eta = 2(theta1 + theta4 - theta2 - theta3) mod 2 pi.
    double eta() const;
};

/// Normalized vector of four complex Gaussians (component standard deviation
/// 1/sqrt(2); the scale drops out after normalization).
HaarSample sample_haar_two_qubit(CounterRng& rng);

/// Alternate construction: Dir(1,1,1,1) squared magnitudes with independent
/// uniform phases.
HaarSample sample_haar_dirichlet(CounterRng& rng);

/// Random admissible (a, b), both nonzero: magnitudes uniform over the valid
/// region of the (|a|, |b|) plane, phases uniform.
KrausParams sample_kraus_params(CounterRng& rng);

/// 6 (2 lambda - 1)^2 on [1/2, 1]. Throws std::invalid_argument outside.
double schmidt_lambda_pdf(double lambda);
/// (2 lambda - 1)^3.
double schmidt_lambda_cdf(double lambda);
/// Inverse of the CDF: (1 + u^{1/3}) / 2.
double schmidt_lambda_quantile(double u);

/// Largest squared Schmidt coefficient of a two-qubit state.
double largest_schmidt_weight(const TwoQubitPureState& psi);

using Rational = boost::rational<boost::multiprecision::cpp_int>;

/// E[prod x_i^beta_i] for x ~ Dir(alpha), exact for integer alpha.
/// Throws std::invalid_argument on length mismatch or non-positive alpha.
Rational dirichlet_moment_exact(std::span<const std::uint64_t> alpha, std::span<const std::uint64_t> beta);

/// Same moment for real alpha. Integer alpha takes the exact path before
/// conversion to double.
double dirichlet_moment(std::span<const double> alpha, std::span<const std::uint64_t> beta);

double to_double(const Rational& r);

struct MonteCarloEstimate {
    double mean = 0.0;
    /// Sample standard deviation over sqrt(n); empty when n_samples == 1.
    std::optional<double> std_error;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::string_view rng_algorithm = CounterRng::kAlgorithm;

    /// |mean - expected| <= sigmas * std_error; empty when std_error is.
    std::optional<bool> agrees_with(double expected, double sigmas = 4.0) const;
};

inline constexpr double kAcceptanceSigmas = 4.0;

/// Evaluates sample(rng_i) for i in [0, n) with rng_i = CounterRng(seed, i),
/// fanned out over `workers` threads (0 = hardware concurrency).
/// Throws std::invalid_argument when n == 0.
MonteCarloEstimate monte_carlo(std::uint64_t n, std::uint64_t seed,
                               const std::function<double(CounterRng&)>& sample, unsigned workers = 0);

/// Integral of 2 lambda (1 - lambda) f(lambda) over [1/2, 1] (adaptive
/// Gauss-Kronrod); 1/5.
double average_known_basis();
MonteCarloEstimate monte_carlo_known_basis(std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

/// 2 E[x1^2 x4^2] + 2 E[x2^2 x3^2] = 2/105.
Rational average_unknown_basis_exact();
double average_unknown_basis_analytic();

enum class UnknownBasisEstimator { ClosedForm, Pipeline };

MonteCarloEstimate monte_carlo_unknown_basis(std::uint64_t n, std::uint64_t seed,
                                             UnknownBasisEstimator estimator = UnknownBasisEstimator::ClosedForm,
                                             unsigned workers = 0);

/// E[Re(c1^2 c4^2 conj(c2)^2 conj(c3)^2)] over Haar states; zero in expectation.
MonteCarloEstimate monte_carlo_phase_term(std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

}  // namespace epp
