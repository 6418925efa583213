#include "epp/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "epp/acceptance.hpp"
#include "epp/protocols.hpp"
#include "epp/sampling.hpp"
#include "epp/vidal.hpp"

namespace epp::cli {

namespace {

constexpr double kRenormalizeLimit = 1e-8;

double parse_real(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw UsageError("malformed number '" + std::string(text) + "'");
    return value;
}

std::string format_complex(Complex z) {
    std::string s = format_number(z.real());
    if (!std::signbit(z.imag())) s += "+";
    return s + format_number(z.imag()) + "j";
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) parts.push_back(text.substr(start, i - start));
    }
    return parts;
}

void field(std::ostream& out, std::string_view key, const std::string& value) { out << key << ": " << value << '\n'; }

}  // namespace

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw UsageError("empty complex literal");
    if (text.back() != 'j') return {parse_real(text), 0.0};

    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        if (body.empty() || body == "+" || body == "-") throw UsageError("malformed complex literal '" + std::string(text) + "'");
        return {0.0, parse_real(body)};
    }
    const std::string_view imag = body.substr(split);
    if (imag == "+" || imag == "-") throw UsageError("malformed complex literal '" + std::string(text) + "'");
    return {parse_real(body.substr(0, split)), parse_real(imag)};
}

Complex parse_param(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) return {parse_real(text), 0.0};
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

ParsedState parse_state(std::string_view text) {
    const auto parts = split_whitespace(text);
    if (parts.size() != 4)
        throw UsageError("a state needs exactly four amplitudes, got " + std::to_string(parts.size()));
    std::array<Complex, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = parse_complex(parts[i]);

    TwoQubitPureState psi{c[0], c[1], c[2], c[3]};
    const double norm2 = psi.norm_squared();
    const double deviation = std::abs(norm2 - 1.0);
    if (deviation <= kTolerance) return {psi, std::nullopt};
    if (deviation > kRenormalizeLimit)
        throw UsageError("state amplitudes are not normalized (|sum |c_i|^2 - 1| = " + format_number(deviation) + ")");
    const double scale = 1.0 / std::sqrt(norm2);
    psi = {c[0] * scale, c[1] * scale, c[2] * scale, c[3] * scale};
    return {psi, "state re-normalized (norm deviation " + format_number(deviation) + ")"};
}

ParsedState lambda_state(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
    return {TwoQubitPureState::schmidt_lambda(lambda), std::nullopt};
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv(std::string(kSeedEnvVar).c_str()); env != nullptr && *env != '\0') {
        std::uint64_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw UsageError(std::string(kSeedEnvVar) + " is not an unsigned 64-bit integer");
        return value;
    }
    return kDefaultSeed;
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return {buf, ptr};
}

// ------------------------------------------------------------------ commands

int cmd_bounds(const TwoQubitPureState& psi, std::ostream& out) {
    const bool schmidt_basis = std::abs(psi.c2) <= kTolerance && std::abs(psi.c3) <= kTolerance;
    field(out, "theorem1_bound", schmidt_basis ? format_number(bound_theorem1(psi.c1, psi.c4)) : "n/a");
    field(out, "theorem2_bound", format_number(bound_theorem2(psi)));
    field(out, "theorem3_bound", format_number(bound_theorem3(psi)));
    field(out, "p_k", format_number(kalman_stage1_prob(psi)));
    const auto second = kalman_stage2_prob(psi);
    field(out, "p_k_prime", second ? format_number(*second) : "undefined");
    return kExitOk;
}

int cmd_simulate(const TwoQubitPureState& psi, const KrausParams& params, std::ostream& out) {
    const PurificationPipeline pipeline(params);
    const ProtocolResult first = pipeline.stage1(psi);
    const SchmidtAmplitudes closed = stage1_amplitudes(psi, params);

    field(out, "a", format_complex(params.a()));
    field(out, "b", format_complex(params.b()));
    field(out, "f", format_number(params.f()));
    field(out, "degenerate", params.degenerate() ? "true" : "false");
    field(out, "alpha_prime", format_complex(closed.alpha));
    field(out, "beta_prime", format_complex(closed.beta));
    field(out, "stage1_success", format_number(first.success_prob));
    field(out, "stage1_bound", format_number(bound_theorem2(psi)));
    if (first.output) {
        const auto& s = *first.output;
        field(out, "stage1_output", format_complex(s[0]) + " " + format_complex(s[1]) + " " + format_complex(s[2]) +
                                        " " + format_complex(s[3]));
    } else {
        field(out, "stage1_output", "undefined");
    }

    const ProtocolResult full = pipeline.run(psi);
    field(out, "stage2_success", format_number(full.stage_probs.back()));
    field(out, "pipeline_success", format_number(full.success_prob));
    field(out, "pipeline_bound", format_number(bound_theorem3(psi)));
    field(out, "output_fidelity_phi_plus",
          full.output ? format_number(fidelity_up_to_phase(*full.output, states::phi_plus())) : "undefined");
    return kExitOk;
}

int cmd_vidal_curve(int grid_points, std::ostream& out) {
    if (grid_points < 2) throw UsageError("--grid must be at least 2");
    out << "lambda,p_vidal,p_universal\n";
    for (int i = 0; i < grid_points; ++i) {
        const double lambda = 0.5 + 0.5 * (i + 1.0) / (grid_points + 1.0);
        out << format_number(lambda) << ',' << format_number(p_vidal_curve(lambda)) << ','
            << format_number(p_universal_curve(lambda)) << '\n';
    }
    return kExitOk;
}

int cmd_f_grid(int grid_points, std::ostream& out) {
    if (grid_points < 2) throw UsageError("--grid must be at least 2");
    out << "abs_a,abs_b,valid,f\n";
    for (int i = 0; i < grid_points; ++i) {
        const double abs_a = static_cast<double>(i) / (grid_points - 1);
        for (int j = 0; j < grid_points; ++j) {
            const double abs_b = static_cast<double>(j) / (grid_points - 1);
            const bool valid = KrausParams::admissible(abs_a, abs_b);
            out << format_number(abs_a) << ',' << format_number(abs_b) << ',' << (valid ? 1 : 0) << ','
                << format_number(f_parameter(abs_a, abs_b)) << '\n';
        }
    }
    return kExitOk;
}

AverageMode parse_mode(std::string_view text) {
    if (text == "known-basis") return AverageMode::KnownBasis;
    if (text == "unknown-basis") return AverageMode::UnknownBasis;
    throw UsageError("--mode must be known-basis or unknown-basis");
}

int cmd_haar_average(std::uint64_t samples, std::uint64_t seed, AverageMode mode, std::ostream& out) {
    if (samples < 1) throw UsageError("--samples must be at least 1");
    const bool known = mode == AverageMode::KnownBasis;
    const double analytic = known ? average_known_basis() : average_unknown_basis_analytic();
    const MonteCarloEstimate est = known ? monte_carlo_known_basis(samples, seed) : monte_carlo_unknown_basis(samples, seed);

    field(out, "mode", known ? "known-basis" : "unknown-basis");
    field(out, "analytic", format_number(analytic) + (known ? " (1/5)" : " (2/105)"));
    field(out, "mean", format_number(est.mean));
    field(out, "std_error", est.std_error ? format_number(*est.std_error) : "undefined");
    field(out, "samples", std::to_string(est.n_samples));
    field(out, "seed", std::to_string(est.seed));
    field(out, "rng", std::string(est.rng_algorithm));
    const auto agrees = est.agrees_with(analytic, kAcceptanceSigmas);
    field(out, "check_4sigma", agrees ? (*agrees ? "PASS" : "FAIL") : "undefined");
    return agrees && !*agrees ? kExitVerificationFailure : kExitOk;
}

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream* json_out, bool corrupt_kraus) {
    acceptance::Options options;
    options.seed = seed;
    options.corrupt_kraus = corrupt_kraus;
    const auto results = acceptance::run_all(options);
    for (const auto& r : results) out << acceptance::summary_line(r) << '\n';
    const bool ok = acceptance::all_pass(results);
    out << (ok ? "verification passed" : "verification FAILED") << " (seed " << seed << ")\n";
    if (json_out != nullptr) *json_out << acceptance::to_json(results, seed).dump(2) << '\n';
    return ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace epp::cli
