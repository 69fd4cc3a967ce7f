#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levycond/transforms.hpp"

namespace levycond {

/// One table row of an experiment: a parameter cell with its estimate.
/// The x and t columns are reused per experiment (x holds epsilon for the
/// conditioning ladders, the entrance point for Feller ladders, q for
/// resolvent rows); see the CSV schema notes in the README.
struct CellResult {
    std::string experiment;
    double alpha = 0.0;
    double rho = 0.0;
    double x = 0.0;
    double t = 0.0;
    double dt = 0.0;
    std::uint64_t n = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::string verdict;  // "pass", "fail" or "info"
};

/// Structured experiment outcome. Verdicts are functions of the recorded
/// numbers and the declared tolerances only, so they can be recomputed from
/// the CSV. Reports are bit-identical across reruns with the same master seed
/// and chunk count (wall_seconds lives outside the CSV).
struct ExperimentReport {
    std::string id;
    std::uint64_t master_seed = 0;
    unsigned chunks = 1;
    bool pass = true;
    double wall_seconds = 0.0;
    std::vector<CellResult> cells;
    std::vector<std::string> notes;
};

struct ExperimentOptions {
    std::uint64_t master_seed = 20260808;
    unsigned chunks = 8;
    bool quick = false;          ///< reduced budgets for CI smoke runs
    std::uint64_t n_override = 0;  ///< 0 keeps the experiment default
};

/// Martingale identities Q_x[(X_t)^g; t<zeta] = x^g and P0_x[|X_t|^g] = |x|^g
/// over an (alpha, rho, x, t) grid with a dt-refinement ladder.
ExperimentReport exp_martingale(Conditioning kind, const ExperimentOptions& opts);

/// Conditioning limits at fixed horizon: shift-conditioned (and, for
/// StayPositive, floor-conditioned) estimates against the meander reference
/// along an epsilon-ladder.
ExperimentReport exp_conditioning_limit(Conditioning kind, const ExperimentOptions& opts);

/// Meander-to-h-transform limit: M^(t)[Z] approaches the entrance estimate of
/// the transform started at 0 along a t-ladder, for F_s-functionals.
ExperimentReport exp_meander_to_htransform(Conditioning kind, const ExperimentOptions& opts);

/// Entrance stabilization: transform estimates along x -> 0 settle within
/// combined error.
ExperimentReport exp_feller_entrance(Conditioning kind, const ExperimentOptions& opts);

/// Long-time behavior under the avoid-origin transform: two-sided unbounded
/// oscillation for 1 < alpha < 2, a fair sign dichotomy for alpha = 2.
ExperimentReport exp_long_time(const ExperimentOptions& opts);

/// All alpha = 2 reductions against their closed-form laws.
ExperimentReport exp_brownian_checks(const ExperimentOptions& opts);

/// Resolvent checks as a report: quadrature against the closed form u_q(0),
/// the power law of h_times and the x-independence of C_times. Deterministic
/// numerics; not one of the six Monte Carlo experiments. In its rows the t
/// column holds q.
ExperimentReport resolvent_checks();

/// The six experiment ids, in registry order.
const std::vector<std::string>& experiment_ids();

/// Runs the experiment(s) behind an id (kind-parametrized experiments run
/// both conditionings). Throws std::invalid_argument for unknown ids.
std::vector<ExperimentReport> run_experiment(const std::string& id,
                                             const ExperimentOptions& opts);

}  // namespace levycond
