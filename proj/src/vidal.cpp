#include "epp/vidal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "epp/linalg.hpp"

namespace epp {

namespace {

std::vector<double> sorted_padded(std::span<const double> coeffs, std::size_t length) {
    std::vector<double> out(coeffs.begin(), coeffs.end());
    out.resize(std::max(length, out.size()), 0.0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> suffix_sums(const std::vector<double>& sorted) {
    // Accumulate from the tail so trailing zeros give exact zeros.
    std::vector<double> e(sorted.size());
    double acc = 0.0;
    for (std::size_t i = sorted.size(); i-- > 0;) {
        acc += sorted[i];
        e[i] = acc;
    }
    return e;
}

void validate(std::span<const double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("empty Schmidt coefficient list");
    for (double c : coeffs)
        if (!(c >= 0.0)) throw std::invalid_argument("Schmidt coefficients must be non-negative");
    const double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
    if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("Schmidt coefficients must sum to one");
}

}  // namespace

MonotoneVector monotones(std::span<const double> schmidt_coeffs) {
    validate(schmidt_coeffs);
    return {suffix_sums(sorted_padded(schmidt_coeffs, 0))};
}

std::vector<double> embed_target_bell() { return {0.5, 0.5, 0.0, 0.0}; }

std::vector<double> two_copy_coefficients(double lambda) {
    const double mu = 1.0 - lambda;
    return {lambda * lambda, lambda * mu, lambda * mu, mu * mu};
}

double vidal_probability(std::span<const double> source, std::span<const double> target) {
    validate(source);
    validate(target);
    const std::size_t n = std::max(source.size(), target.size());
    const auto e_source = suffix_sums(sorted_padded(source, n));
    const auto e_target = suffix_sums(sorted_padded(target, n));

    double best = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
        if (e_target[l] <= 0.0) continue;  // x/0 and 0/0 impose no constraint
        best = std::min(best, e_source[l] / e_target[l]);
    }
    return std::clamp(best, 0.0, 1.0);
}

double p_vidal_curve(double lambda) {
    if (!(lambda > 0.5 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (1/2, 1)");
    if (lambda < 1.0 / std::sqrt(2.0)) return 1.0;
    return 2.0 * (1.0 - lambda * lambda);
}

double p_universal_curve(double lambda) { return 2.0 * lambda * (1.0 - lambda); }

}  // namespace epp
