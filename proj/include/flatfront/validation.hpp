#pragma once

// One-call validation of the forward pipeline: every check of the holo,
// frame, front and gauss modules, collected into a machine-readable report.

#include <flatfront/io.hpp>

namespace flatfront {

enum class CheckStatus : std::uint8_t { pass, fail, skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult
{
    std::string name;
    std::string cell;  // "vertex", "edge", "face" or "" for global checks
    std::optional<double> s;
    double max = 0;
    double tolerance = 0;
    CheckStatus status = CheckStatus::skipped;
    std::optional<std::size_t> worst;
    std::string message;
};

struct ValidationReport
{
    std::vector<CheckResult> checks;

    bool passed() const;
    std::vector<const CheckResult*> failures() const;
    const CheckResult* find(std::string_view name, std::optional<double> s = {}) const;
    Json to_json() const;
};

struct ValidationInput
{
    HolomorphicMap holo;
    Real t = 0;
    /// Empty means s = 0 only.
    std::vector<Real> s;
    Vertex root;
    Mat2 frame_root = Mat2::Identity();
    Branch branch = Branch::real;
    Tolerances tol = default_tolerances();
};

/// Builds the front family and runs all checks. Never throws for geometric
/// failures: a check that cannot be evaluated is reported as failed, and
/// checks depending on a failed stage are reported as skipped.
ValidationReport run_validation(const ValidationInput& input);

}  // namespace flatfront
