#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levycond {

/// Validated run configuration (INI-style key = value text with [run],
/// [params], [budgets] and [simulate] sections). Every field has a usable
/// default; budgets set to 0 keep per-experiment defaults.
struct RunConfig {
    // [run]
    std::string experiment = "martingale";
    std::uint64_t seed = 20260808;
    unsigned chunks = 8;
    bool quick = false;
    std::string out_dir = "out";
    // [params]
    double alpha = 1.5;
    double rho = 0.5;
    bool symmetric = true;
    std::string kind = "both";  // both | stay-positive | avoid-origin
    // [budgets]
    std::uint64_t n = 0;
    double eps_hit_coeff = 0.5;
    // [simulate]
    double x0 = 0.0;
    double t_max = 1.0;
    double dt = 1e-3;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Either a validated config or the full list of violations.
struct ParseResult {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;
    bool ok() const { return config.has_value(); }
};

/// Parses and validates; reports every violation, not just the first.
ParseResult parse_config(const std::string& text);

/// Fixed-order serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Ids accepted in the experiment field: the six experiments plus the
/// "simulate" and "resolvent" utilities.
const std::vector<std::string>& known_run_targets();

}  // namespace levycond
