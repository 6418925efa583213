// End-to-end verification campaign: each numbered criterion checks one
// closed-form result against the matrix-level simulation or an independent
// analytic/statistical route.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace epp::acceptance {

struct Check {
    std::string criterion;  // e.g. "7.quadrature"
    std::string expected;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double runtime_seconds = 0.0;
    std::optional<double> runtime_limit_seconds;

    bool runtime_ok() const { return !runtime_limit_seconds || runtime_seconds < *runtime_limit_seconds; }
    bool pass() const;
};

struct Options {
    std::uint64_t seed = 42;
    /// Test hook: perturbs the Kraus operator fed to the constraint checks.
    bool corrupt_kraus = false;
    unsigned workers = 0;
};

/// Criteria 1-10.
std::vector<CriterionResult> run_numeric_criteria(const Options& options);

/// Criteria 1-10 plus the determinism criterion 11, which repeats 1-10 and
/// compares the serialized summaries byte for byte.
std::vector<CriterionResult> run_all(const Options& options);

/// {criterion, expected, observed, tolerance, pass} per check. Runtimes are
/// excluded so the document is reproducible.
nlohmann::json to_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

/// One formatted line per criterion.
std::string summary_line(const CriterionResult& result);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace epp::acceptance
