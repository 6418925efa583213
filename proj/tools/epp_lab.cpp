// epp-lab: bounds, simulations, figure data and the verification campaign for
// universal conclusive entanglement purification.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "epp/commands.hpp"

namespace {

using namespace epp::cli;

struct Flags {
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 100'000;
    std::string out_path;
    int grid = 99;
    std::optional<double> lambda;
    std::string state;
    std::string mode = "unknown-basis";
    std::string a = "0.70710678118654757";
    std::string b = "0.70710678118654757";
    bool corrupt_kraus = false;
};

epp::TwoQubitPureState read_state(const Flags& flags) {
    if (flags.lambda && !flags.state.empty()) throw UsageError("give either --state or --lambda, not both");
    ParsedState parsed = flags.lambda ? lambda_state(*flags.lambda)
                         : !flags.state.empty() ? parse_state(flags.state)
                                                : throw UsageError("a state is required (--state or --lambda)");
    if (parsed.warning) std::cerr << "warning: " << *parsed.warning << '\n';
    return parsed.state;
}

epp::KrausParams read_params(const Flags& flags) {
    const epp::Complex a = parse_param(flags.a);
    const epp::Complex b = parse_param(flags.b);
    if (!epp::KrausParams::admissible(a, b))
        throw UsageError("Kraus parameters must satisfy 2(|a|^4 + |b|^4) <= 1 and not both be zero");
    return {a, b};
}

// Runs `body` against --out when given, stdout otherwise.
template <typename Body>
int with_output(const std::string& path, Body&& body) {
    if (path.empty()) return body(std::cout);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    const int code = body(file);
    file.flush();
    if (!file) throw UsageError("failed writing '" + path + "'");
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    std::cout.imbue(std::locale::classic());

    CLI::App app{"Universal conclusive entanglement purification laboratory"};
    app.require_subcommand(1);
    Flags flags;

    const auto add_state = [&](CLI::App* cmd) {
        cmd->add_option("--state", flags.state, "four amplitudes \"c1 c2 c3 c4\" (re or re+imj)");
        cmd->add_option("--lambda", flags.lambda, "Schmidt state sqrt(x)|00> + sqrt(1-x)|11>");
    };

    auto* bounds = app.add_subcommand("bounds", "closed-form success probabilities and bounds");
    add_state(bounds);
    bounds->add_option("--out", flags.out_path, "write the report to a file");

    auto* simulate = app.add_subcommand("simulate", "matrix-level two-stage purification");
    add_state(simulate);
    simulate->add_option("--a", flags.a, "first-stage parameter a as re,im");
    simulate->add_option("--b", flags.b, "first-stage parameter b as re,im");
    simulate->add_option("--out", flags.out_path, "write the report to a file");

    auto* vidal = app.add_subcommand("vidal-curve", "CSV of optimal vs universal two-copy probabilities");
    vidal->add_option("--grid", flags.grid, "number of lambda points in (1/2, 1)");
    vidal->add_option("--out", flags.out_path, "CSV output path");

    auto* fgrid = app.add_subcommand("f-grid", "CSV of the admissible (|a|, |b|) domain and f");
    fgrid->add_option("--grid", flags.grid, "points per axis over [0, 1]");
    fgrid->add_option("--out", flags.out_path, "CSV output path");

    auto* haar = app.add_subcommand("haar-average", "analytic and Monte Carlo Haar averages");
    haar->add_option("--samples", flags.samples, "Monte Carlo sample count");
    haar->add_option("--seed", flags.seed, "64-bit seed (fallback: EPP_LAB_SEED, then 42)");
    haar->add_option("--mode", flags.mode, "known-basis or unknown-basis");

    auto* verify = app.add_subcommand("verify", "run every acceptance criterion");
    verify->add_option("--seed", flags.seed, "64-bit seed (fallback: EPP_LAB_SEED, then 42)");
    verify->add_option("--out", flags.out_path, "JSON summary path");
    verify->add_flag("--corrupt-kraus", flags.corrupt_kraus, "negative control: perturb the Kraus operator")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds) {
            const auto psi = read_state(flags);
            return with_output(flags.out_path, [&](std::ostream& out) { return cmd_bounds(psi, out); });
        }
        if (*simulate) {
            const auto psi = read_state(flags);
            const auto params = read_params(flags);
            return with_output(flags.out_path, [&](std::ostream& out) { return cmd_simulate(psi, params, out); });
        }
        if (*vidal) return with_output(flags.out_path, [&](std::ostream& out) { return cmd_vidal_curve(flags.grid, out); });
        if (*fgrid) return with_output(flags.out_path, [&](std::ostream& out) { return cmd_f_grid(flags.grid, out); });
        if (*haar) {
            const auto mode = parse_mode(flags.mode);
            return cmd_haar_average(flags.samples, resolve_seed(flags.seed), mode, std::cout);
        }
        if (*verify) {
            const std::uint64_t seed = resolve_seed(flags.seed);
            if (flags.out_path.empty()) return cmd_verify(seed, std::cout, nullptr, flags.corrupt_kraus);
            std::ofstream json(flags.out_path, std::ios::binary);
            if (!json) throw UsageError("cannot open '" + flags.out_path + "' for writing");
            return cmd_verify(seed, std::cout, &json, flags.corrupt_kraus);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerificationFailure;
    }
    return kExitUsage;
}
