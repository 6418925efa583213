#include "epp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "epp/protocols.hpp"

namespace epp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

HaarSample from_amplitudes(const std::array<Complex, 4>& c) {
    HaarSample s;
    s.state = {c[0], c[1], c[2], c[3]};
    for (std::size_t i = 0; i < 4; ++i) {
        s.x[i] = std::norm(c[i]);
        s.theta[i] = wrap_angle(std::arg(c[i]));
    }
    return s;
}

// Neumaier-compensated sum, evaluated in index order.
double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

Rational rising_factorial(std::uint64_t x, std::uint64_t n) {
    boost::multiprecision::cpp_int acc = 1;
    for (std::uint64_t j = 0; j < n; ++j) acc *= x + j;
    return Rational(acc);
}

}  // namespace

// ------------------------------------------------------------------ CounterRng

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return mix64(seed ^ mix64(tag)); }

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(mix64(seed) ^ mix64(~stream)) {}

CounterRng::result_type CounterRng::operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open_left() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

double CounterRng::normal() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open_left()));
    const double angle = kTwoPi * uniform();
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

// ----------------------------------------------------------------- Haar states

double HaarSample::eta() const { return wrap_angle(2.0 * (theta[0] + theta[3] - theta[1] - theta[2])); }

HaarSample sample_haar_two_qubit(CounterRng& rng) {
    const double sigma = 1.0 / std::sqrt(2.0);
    std::array<Complex, 4> c;
    double norm2 = 0.0;
    for (auto& ci : c) {
        const double re = sigma * rng.normal();
        const double im = sigma * rng.normal();
        ci = {re, im};
        norm2 += std::norm(ci);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& ci : c) ci *= inv;
    return from_amplitudes(c);
}

HaarSample sample_haar_dirichlet(CounterRng& rng) {
    std::array<double, 4> e;
    double total = 0.0;
    for (auto& ei : e) {
        ei = -std::log(rng.uniform_open_left());
        total += ei;
    }
    std::array<Complex, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = std::polar(std::sqrt(e[i] / total), kTwoPi * rng.uniform());
    return from_amplitudes(c);
}

KrausParams sample_kraus_params(CounterRng& rng) {
    const double limit = std::pow(2.0, -0.25);
    for (;;) {
        const double abs_a = limit * rng.uniform_open_left();
        const double abs_b = limit * rng.uniform_open_left();
        if (constraint_value(abs_a, abs_b) > 1.0) continue;
        return {std::polar(abs_a, kTwoPi * rng.uniform()), std::polar(abs_b, kTwoPi * rng.uniform())};
    }
}

// ------------------------------------------------------------ lambda density

double schmidt_lambda_pdf(double lambda) {
    if (!(lambda >= 0.5 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [1/2, 1]");
    const double t = 2.0 * lambda - 1.0;
    return 6.0 * t * t;
}

double schmidt_lambda_cdf(double lambda) {
    if (!(lambda >= 0.5 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [1/2, 1]");
    const double t = 2.0 * lambda - 1.0;
    return t * t * t;
}

double schmidt_lambda_quantile(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
    return 0.5 * (1.0 + std::cbrt(u));
}

double largest_schmidt_weight(const TwoQubitPureState& psi) {
    // lambda_max = (1 + sqrt(1 - 4 |det C|^2)) / 2 for a normalized state.
    const double det = std::abs(psi.c1 * psi.c4 - psi.c2 * psi.c3);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det * det)));
}

// ---------------------------------------------------------- Dirichlet moments

Rational dirichlet_moment_exact(std::span<const std::uint64_t> alpha, std::span<const std::uint64_t> beta) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("alpha and beta must have equal length");
    if (alpha.empty()) throw std::invalid_argument("empty Dirichlet parameter list");
    std::uint64_t alpha_sum = 0;
    std::uint64_t beta_sum = 0;
    Rational numer(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0) throw std::invalid_argument("Dirichlet parameters must be positive");
        alpha_sum += alpha[i];
        beta_sum += beta[i];
        // Gamma(a + b) / Gamma(a) = a (a + 1) ... (a + b - 1).
        numer *= rising_factorial(alpha[i], beta[i]);
    }
    return numer / rising_factorial(alpha_sum, beta_sum);
}

double to_double(const Rational& r) {
    using boost::multiprecision::cpp_bin_float_double;
    return static_cast<double>(cpp_bin_float_double(r.numerator()) / cpp_bin_float_double(r.denominator()));
}

double dirichlet_moment(std::span<const double> alpha, std::span<const std::uint64_t> beta) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("alpha and beta must have equal length");
    if (alpha.empty()) throw std::invalid_argument("empty Dirichlet parameter list");
    bool integral = true;
    for (double a : alpha) {
        if (!(a > 0.0)) throw std::invalid_argument("Dirichlet parameters must be positive");
        integral = integral && a == std::floor(a) && a < 0x1.0p53;
    }
    if (integral) {
        std::vector<std::uint64_t> ia(alpha.size());
        std::transform(alpha.begin(), alpha.end(), ia.begin(), [](double a) { return static_cast<std::uint64_t>(a); });
        return to_double(dirichlet_moment_exact(ia, beta));
    }
    double alpha_sum = 0.0;
    std::uint64_t beta_sum = 0;
    long double value = 1.0L;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        alpha_sum += alpha[i];
        beta_sum += beta[i];
        for (std::uint64_t j = 0; j < beta[i]; ++j) value *= alpha[i] + static_cast<long double>(j);
    }
    for (std::uint64_t j = 0; j < beta_sum; ++j) value /= alpha_sum + static_cast<long double>(j);
    return static_cast<double>(value);
}

// ----------------------------------------------------------------- estimates

std::optional<bool> MonteCarloEstimate::agrees_with(double expected, double sigmas) const {
    if (!std_error) return std::nullopt;
    return std::abs(mean - expected) <= sigmas * *std_error;
}

MonteCarloEstimate monte_carlo(std::uint64_t n, std::uint64_t seed, const std::function<double(CounterRng&)>& sample,
                               unsigned workers) {
    if (n == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    std::vector<double> values(n);
    const auto fill = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            CounterRng rng(seed, i);
            values[i] = sample(rng);
        }
    };
    if (workers == 1) {
        fill(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (n + workers - 1) / workers;
        for (std::uint64_t begin = 0; begin < n; begin += chunk)
            pool.emplace_back(fill, begin, std::min(n, begin + chunk));
    }

    MonteCarloEstimate est;
    est.n_samples = n;
    est.seed = seed;
    est.mean = compensated_sum(values) / static_cast<double>(n);
    if (n > 1) {
        std::vector<double> dev(n);
        std::transform(values.begin(), values.end(), dev.begin(), [&](double v) { return (v - est.mean) * (v - est.mean); });
        const double variance = compensated_sum(dev) / static_cast<double>(n - 1);
        est.std_error = std::sqrt(variance / static_cast<double>(n));
    }
    return est;
}

double average_known_basis() {
    const auto integrand = [](double lambda) { return 2.0 * lambda * (1.0 - lambda) * schmidt_lambda_pdf(lambda); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.5, 1.0, 15, 1e-10);
}

MonteCarloEstimate monte_carlo_known_basis(std::uint64_t n, std::uint64_t seed, unsigned workers) {
    return monte_carlo(
        n, seed,
        [](CounterRng& rng) {
            const double lambda = schmidt_lambda_quantile(rng.uniform());
            return bound_theorem1(std::sqrt(lambda), std::sqrt(1.0 - lambda));
        },
        workers);
}

Rational average_unknown_basis_exact() {
    const std::array<std::uint64_t, 4> alpha = {1, 1, 1, 1};
    const std::array<std::uint64_t, 4> outer_pair = {2, 0, 0, 2};
    const std::array<std::uint64_t, 4> inner_pair = {0, 2, 2, 0};
    return Rational(2) * dirichlet_moment_exact(alpha, outer_pair) + Rational(2) * dirichlet_moment_exact(alpha, inner_pair);
}

double average_unknown_basis_analytic() { return to_double(average_unknown_basis_exact()); }

MonteCarloEstimate monte_carlo_unknown_basis(std::uint64_t n, std::uint64_t seed, UnknownBasisEstimator estimator,
                                             unsigned workers) {
    if (estimator == UnknownBasisEstimator::ClosedForm)
        return monte_carlo(
            n, seed, [](CounterRng& rng) { return bound_theorem3(sample_haar_two_qubit(rng).state); }, workers);

    const PurificationPipeline pipeline(KrausParams::optimal());
    return monte_carlo(
        n, seed, [&](CounterRng& rng) { return pipeline.run(sample_haar_two_qubit(rng).state).success_prob; },
        workers);
}

MonteCarloEstimate monte_carlo_phase_term(std::uint64_t n, std::uint64_t seed, unsigned workers) {
    return monte_carlo(
        n, seed, [](CounterRng& rng) { return phase_term(sample_haar_two_qubit(rng).state); }, workers);
}

}  // namespace epp
