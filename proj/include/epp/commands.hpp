// Command implementations behind the epp-lab executable. Each command writes
// to a stream and returns a process exit code.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "epp/kraus.hpp"
#include "epp/linalg.hpp"

namespace epp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::string_view kSeedEnvVar = "EPP_LAB_SEED";

/// Malformed command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "re", "re+imj", "re-imj" or "imj".
Complex parse_complex(std::string_view text);

/// "re,im" or a single real "re".
Complex parse_param(std::string_view text);

struct ParsedState {
    TwoQubitPureState state;
    std::optional<std::string> warning;  // set when re-normalized
};

/// Four whitespace-separated complex literals. Norm deviations up to 1e-10
/// are accepted as is, up to 1e-8 re-normalized with a warning, beyond that
/// rejected with UsageError.
ParsedState parse_state(std::string_view text);

/// sqrt(lambda)|00> + sqrt(1 - lambda)|11>; lambda must lie in [0, 1].
ParsedState lambda_state(double lambda);

/// Flag value, else EPP_LAB_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

/// 17 significant digits, '.' decimal separator, no grouping.
std::string format_number(double value);

int cmd_bounds(const TwoQubitPureState& psi, std::ostream& out);
int cmd_simulate(const TwoQubitPureState& psi, const KrausParams& params, std::ostream& out);

/// CSV "lambda,p_vidal,p_universal" over lambda_i = 1/2 + (i + 1) / (2 (n + 1)).
int cmd_vidal_curve(int grid_points, std::ostream& out);

/// CSV "abs_a,abs_b,valid,f" over the square grid {i / (n - 1)}^2.
int cmd_f_grid(int grid_points, std::ostream& out);

enum class AverageMode { KnownBasis, UnknownBasis };

AverageMode parse_mode(std::string_view text);

int cmd_haar_average(std::uint64_t samples, std::uint64_t seed, AverageMode mode, std::ostream& out);

/// Runs the acceptance criteria; writes the JSON summary to json_out when
/// given. corrupt_kraus is a negative-control hook.
int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream* json_out, bool corrupt_kraus = false);

}  // namespace epp::cli
