// Optimal state-specific conversion probabilities from entanglement
// monotones (Vidal's formula), for comparison with the universal protocol.

#pragma once

#include <span>
#include <vector>

namespace epp {

/// E_l = sum_{i >= l} alpha_i over non-increasingly sorted Schmidt
/// coefficients (squared), so E_1 = 1 and E_l >= E_{l+1}.
struct MonotoneVector {
    std::vector<double> values;
};

/// Throws std::invalid_argument on a negative coefficient or when the
/// coefficients do not sum to one within kTolerance.
MonotoneVector monotones(std::span<const double> schmidt_coeffs);

/// Squared Schmidt coefficients of |phi+> (x) |00> across the AA'|BB' cut.
std::vector<double> embed_target_bell();

/// Squared Schmidt coefficients of two copies of sqrt(lambda)|00> + sqrt(1-lambda)|11>.
std::vector<double> two_copy_coefficients(double lambda);

/// min_l E_l(source) / E_l(target), skipping every l with E_l(target) = 0.
/// Shorter lists are zero-padded; the result is clamped to [0, 1].
double vidal_probability(std::span<const double> source, std::span<const double> target);

/// 1 for lambda < 1/sqrt(2), else 2(1 - lambda^2). Throws std::invalid_argument
/// outside the open interval (1/2, 1).
double p_vidal_curve(double lambda);

/// 2 lambda (1 - lambda), the universal two-copy probability.
double p_universal_curve(double lambda);

}  // namespace epp
