#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "epp/protocols.hpp"
#include "epp/sampling.hpp"

using namespace epp;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Kolmogorov-Smirnov critical value at the 1% level is 1.63 / sqrt(N).
double ks_statistic(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = schmidt_lambda_cdf(samples[i]);
        d = std::max({d, std::abs((i + 1) / n - cdf), std::abs(i / n - cdf)});
    }
    return d;
}

// Largest squared Schmidt coefficient from the determinant of the
// coefficient matrix: lambda (1 - lambda) = |c1 c4 - c2 c3|^2.
double lambda_from_determinant(const TwoQubitPureState& psi) {
    const double det2 = std::norm(psi.c1 * psi.c4 - psi.c2 * psi.c3);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det2)));
}

}  // namespace

TEST(CounterRng, DeterministicPerSeedAndStream) {
    CounterRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    for (int i = 0; i < 100; ++i) {
        const auto va = a();
        EXPECT_EQ(va, b());
        EXPECT_NE(va, c());
        EXPECT_NE(va, d());
    }
}

TEST(CounterRng, UniformRanges) {
    CounterRng rng(1, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const double v = rng.uniform_open_left();
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 4 * std::sqrt(1.0 / 12 / 100000));
}

TEST(CounterRng, NormalMoments) {
    CounterRng rng(2, 0);
    const int n = 200000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(HaarSample, FieldsAreConsistent) {
    CounterRng rng(3, 0);
    for (int i = 0; i < 1000; ++i) {
        for (const auto& s : {sample_haar_two_qubit(rng), sample_haar_dirichlet(rng)}) {
            double total = 0.0;
            const auto amps = s.state.amplitudes();
            for (int k = 0; k < 4; ++k) {
                EXPECT_GE(s.x[k], 0.0);
                EXPECT_GE(s.theta[k], 0.0);
                EXPECT_LT(s.theta[k], kTwoPi);
                EXPECT_NEAR(std::norm(amps[k]), s.x[k], 1e-14);
                if (s.x[k] > 1e-12) EXPECT_NEAR(std::abs(std::polar(1.0, s.theta[k]) - amps[k] / std::abs(amps[k])), 0, 1e-12);
                total += s.x[k];
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_GE(s.eta(), 0.0);
            EXPECT_LT(s.eta(), kTwoPi);
        }
    }
}

TEST(HaarSample, FirstMomentIsOneQuarter) {
    const auto est = monte_carlo(100000, 5, [](CounterRng& r) { return sample_haar_two_qubit(r).x[0]; });
    EXPECT_TRUE(est.agrees_with(0.25).value());
}

TEST(HaarSample, MixedMomentIsOneOver210ForBothConstructions) {
    const auto gauss = monte_carlo(100000, 6, [](CounterRng& r) {
        const auto s = sample_haar_two_qubit(r);
        return s.x[0] * s.x[0] * s.x[3] * s.x[3];
    });
    const auto dir = monte_carlo(100000, 7, [](CounterRng& r) {
        const auto s = sample_haar_dirichlet(r);
        return s.x[0] * s.x[0] * s.x[3] * s.x[3];
    });
    EXPECT_TRUE(gauss.agrees_with(1.0 / 210).value()) << gauss.mean;
    EXPECT_TRUE(dir.agrees_with(1.0 / 210).value()) << dir.mean;
}

TEST(HaarSample, CosEtaAveragesToZero) {
    const auto est = monte_carlo(100000, 8, [](CounterRng& r) { return std::cos(sample_haar_two_qubit(r).eta()); });
    EXPECT_TRUE(est.agrees_with(0.0).value()) << est.mean;
}

TEST(HaarSample, LargestSchmidtWeightFollowsDensity) {
    const int n = 20000;
    std::vector<double> gauss, dir;
    CounterRng rng(9, 0);
    for (int i = 0; i < n; ++i) {
        const auto s = sample_haar_two_qubit(rng);
        const double lambda = largest_schmidt_weight(s.state);
        EXPECT_NEAR(lambda, lambda_from_determinant(s.state), 1e-9);
        gauss.push_back(lambda);
        dir.push_back(largest_schmidt_weight(sample_haar_dirichlet(rng).state));
    }
    const double critical = 1.63 / std::sqrt(static_cast<double>(n));
    EXPECT_LT(ks_statistic(gauss), critical);
    EXPECT_LT(ks_statistic(dir), critical);
}

TEST(LambdaDensity, Values) {
    EXPECT_EQ(schmidt_lambda_pdf(0.5), 0.0);
    EXPECT_EQ(schmidt_lambda_pdf(1.0), 6.0);
    EXPECT_THROW(schmidt_lambda_pdf(0.4), std::invalid_argument);
    EXPECT_THROW(schmidt_lambda_cdf(1.1), std::invalid_argument);
    for (double u : {0.0, 0.1, 0.5, 0.9, 1.0}) EXPECT_NEAR(schmidt_lambda_cdf(schmidt_lambda_quantile(u)), u, 1e-15);
}

TEST(LambdaDensity, IntegratesToOne) {
    // Simpson's rule is exact for the quadratic density.
    const int m = 10;
    const double h = 0.5 / m;
    double sum = schmidt_lambda_pdf(0.5) + schmidt_lambda_pdf(1.0);
    for (int i = 1; i < m; ++i) sum += (i % 2 ? 4 : 2) * schmidt_lambda_pdf(0.5 + i * h);
    EXPECT_NEAR(sum * h / 3, 1.0, 1e-12);
}

TEST(Dirichlet, ExactMoments) {
    const std::vector<std::uint64_t> ones{1, 1, 1, 1};
    EXPECT_EQ(dirichlet_moment_exact(ones, std::vector<std::uint64_t>{2, 0, 0, 2}), Rational(1, 210));
    EXPECT_EQ(dirichlet_moment_exact(ones, std::vector<std::uint64_t>{0, 0, 0, 0}), Rational(1));
    EXPECT_EQ(dirichlet_moment_exact(ones, std::vector<std::uint64_t>{1, 0, 0, 0}), Rational(1, 4));
    EXPECT_EQ(average_unknown_basis_exact(), Rational(2, 105));
    EXPECT_DOUBLE_EQ(average_unknown_basis_analytic(), 2.0 / 105);
}

TEST(Dirichlet, RealParametersMatchGammaFunctions) {
    const std::vector<double> alpha{0.5, 1.5, 2.25};
    const std::vector<std::uint64_t> beta{2, 0, 3};
    const double sa = 4.25;
    const double expected = std::tgamma(sa) / std::tgamma(sa + 5) * std::tgamma(2.5) / std::tgamma(0.5) *
                            std::tgamma(5.25) / std::tgamma(2.25);
    EXPECT_NEAR(dirichlet_moment(alpha, beta), expected, 1e-14);
    EXPECT_DOUBLE_EQ(dirichlet_moment(std::vector<double>{1, 1, 1, 1}, std::vector<std::uint64_t>{2, 0, 0, 2}),
                     1.0 / 210);
}

TEST(Dirichlet, Errors) {
    EXPECT_THROW(dirichlet_moment(std::vector<double>{1, 1}, std::vector<std::uint64_t>{1}), std::invalid_argument);
    EXPECT_THROW(dirichlet_moment(std::vector<double>{0, 1}, std::vector<std::uint64_t>{1, 1}), std::invalid_argument);
    EXPECT_THROW(dirichlet_moment_exact(std::vector<std::uint64_t>{0}, std::vector<std::uint64_t>{1}),
                 std::invalid_argument);
}

TEST(KnownBasis, AnalyticAndMonteCarlo) {
    EXPECT_NEAR(average_known_basis(), 0.2, 1e-8);
    const auto est = monte_carlo_known_basis(100000, 42);
    EXPECT_TRUE(est.agrees_with(0.2).value()) << est.mean;
    EXPECT_EQ(est.seed, 42u);
    EXPECT_EQ(est.rng_algorithm, CounterRng::kAlgorithm);
}

TEST(KnownBasis, SingleSampleHasNoStandardError) {
    const auto est = monte_carlo_known_basis(1, 42);
    EXPECT_FALSE(est.std_error.has_value());
    EXPECT_FALSE(est.agrees_with(0.2).has_value());
    CounterRng rng(42, 0);
    const double lambda = schmidt_lambda_quantile(rng.uniform());
    EXPECT_NEAR(est.mean, 2 * lambda * (1 - lambda), 1e-12);
}

TEST(UnknownBasis, MonteCarloBothEstimators) {
    const auto closed = monte_carlo_unknown_basis(10000, 42);
    const auto pipeline = monte_carlo_unknown_basis(10000, 42, UnknownBasisEstimator::Pipeline);
    const double target = 2.0 / 105;
    EXPECT_TRUE(closed.agrees_with(target).value()) << closed.mean;
    EXPECT_TRUE(pipeline.agrees_with(target).value()) << pipeline.mean;
    // Same draws, so the two estimators agree far more tightly than 4 sigma.
    EXPECT_NEAR(closed.mean, pipeline.mean, 1e-12);
}

TEST(UnknownBasis, PhaseTermAveragesToZero) {
    const auto est = monte_carlo_phase_term(100000, 42);
    EXPECT_TRUE(est.agrees_with(0.0).value()) << est.mean;
}

TEST(MonteCarlo, BitwiseDeterministicAcrossWorkerCounts) {
    const auto reference = monte_carlo_unknown_basis(20000, 99, UnknownBasisEstimator::ClosedForm, 1);
    for (unsigned workers : {2u, 3u, 7u, 16u}) {
        const auto est = monte_carlo_unknown_basis(20000, 99, UnknownBasisEstimator::ClosedForm, workers);
        EXPECT_EQ(est.mean, reference.mean) << workers;
        EXPECT_EQ(est.std_error, reference.std_error) << workers;
    }
    const auto other_seed = monte_carlo_unknown_basis(20000, 100);
    EXPECT_NE(other_seed.mean, reference.mean);
}

TEST(MonteCarlo, RejectsZeroSamples) {
    EXPECT_THROW(monte_carlo(0, 1, [](CounterRng&) { return 0.0; }), std::invalid_argument);
}

TEST(MonteCarlo, ConstantSampleHasZeroError) {
    const auto est = monte_carlo(1000, 1, [](CounterRng&) { return 0.1; });
    EXPECT_NEAR(est.mean, 0.1, 1e-15);
    EXPECT_NEAR(*est.std_error, 0.0, 1e-15);
}

TEST(KrausSampler, StaysInDomain) {
    CounterRng rng(10, 0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = sample_kraus_params(rng);
        EXPECT_TRUE(KrausParams::admissible(p.a(), p.b()));
        EXPECT_GT(std::abs(p.a()), 0.0);
        EXPECT_GT(std::abs(p.b()), 0.0);
    }
}
