#pragma once

#include <cstdint>
#include <vector>

#include "levycond/rng.hpp"
#include "levycond/stats.hpp"

namespace levycond {

/// Law of a strictly stable process: index alpha and positivity parameter
/// rho = P0(X_t >= 0). Normalization is E exp(i*l*X_1) = exp(-|l|^alpha) in
/// the symmetric case, so alpha = 2 is Brownian motion with variance 2t.
///
/// Admissible (alpha, rho):
///   0 < alpha < 1 : rho in (0,1)   (endpoints are the excluded subordinator case)
///   alpha = 1     : rho in (0,1)   (drifted Cauchy; asymmetric case is experimental)
///   1 < alpha <= 2: rho in [1 - 1/alpha, 1/alpha]
struct StableParams {
    double alpha;
    double rho;
    bool symmetric;

    static StableParams make(double alpha, double rho);
    static StableParams make_symmetric(double alpha);

    bool is_brownian() const { return alpha == 2.0; }
    /// Exponent of h_up: alpha*(1-rho).
    double gamma_stay_positive() const { return alpha * (1.0 - rho); }
    /// Exponent of h_times: alpha-1.
    double gamma_avoid_origin() const { return alpha - 1.0; }
};

/// Uniform time grid on [0, t_max] with n_steps steps of size dt.
struct GridSpec {
    double t_max;
    std::size_t n_steps;

    GridSpec(double t_max_, std::size_t n_steps_);
    /// Grid with a given step; t_max must be an integer multiple of dt.
    static GridSpec from_dt(double t_max, double dt);

    double dt() const { return t_max / static_cast<double>(n_steps); }
};

/// Discretized trajectory: values[k] is the state at time k*dt.
struct SamplePath {
    GridSpec grid;
    double x0 = 0.0;
    std::vector<double> values;  // size n_steps + 1, values[0] == x0
    RngStream seed_tag;
};

/// One-increment sampler bound to (params, dt).
///
/// Chambers-Mallows-Stuck in the strictly stable parametrization: with
/// U ~ Unif(-pi/2, pi/2), W ~ Exp(1), B = pi*(rho - 1/2) and
/// S = cos(alpha*B)^(-1/alpha),
///   X_1 = S * sin(alpha*(U+B)) * cos(U)^(-1/alpha)
///           * (cos(U - alpha*(U+B)) / W)^((1-alpha)/alpha),
/// and the increment over dt is dt^(1/alpha) * X_1. alpha = 1 is the drifted
/// Cauchy tan(U) + tan(pi*(rho-1/2)); alpha = 2 reduces to 2 sin(U) sqrt(W).
class IncrementSampler {
  public:
    IncrementSampler(const StableParams& params, double dt);

    double operator()(Xoshiro256& rng) const {
        if (brownian_) {
            const double u = rng.uniform_angle();
            const double w = rng.exponential();
            return dt_scale_ * 2.0 * std::sin(u) * std::sqrt(w);
        }
        if (cauchy_) {
            const double u = rng.uniform_angle();
            return dt_scale_ * (std::tan(u) + cauchy_drift_);
        }
        const double u = rng.uniform_angle();
        const double w = rng.exponential();
        const double a = alpha_ * (u + b_);
        const double num = scale_ * std::sin(a) * std::pow(std::cos(u), -inv_alpha_);
        return dt_scale_ * num * std::pow(std::cos(u - a) / w, exponent_ratio_);
    }

  private:
    double alpha_;
    double dt_scale_;        // dt^(1/alpha)
    double b_;               // pi*(rho - 1/2)
    double scale_;           // cos(alpha*b)^(-1/alpha)
    double inv_alpha_;
    double exponent_ratio_;  // (1-alpha)/alpha
    double cauchy_drift_;
    bool brownian_;
    bool cauchy_;
};

/// One increment distributed as X_dt under P_0, drawn from the given stream.
double sample_stable_increment(const StableParams& params, double dt, RngStream rng);

/// Path from x0 on the grid: cumulative sum of i.i.d. X_dt increments.
SamplePath simulate_path(const StableParams& params, const GridSpec& grid, double x0,
                         RngStream rng);

/// Path re-indexed by the shift operator: new values[k] = old values[k + epsilon/dt].
/// epsilon must be a grid-aligned offset in [0, t_max].
SamplePath shift_path(const SamplePath& path, double epsilon);

/// Two-sample KS check of the scaling identity k^(-1/alpha) X_{kt} =law= X_t.
KsReport verify_scaling(const StableParams& params, double k, double t, std::size_t n,
                        RngStream rng);

/// Monte Carlo estimate of P0(X_t >= 0).
MCEstimate estimate_positivity(const StableParams& params, double t, std::size_t n,
                               RngStream rng);

}  // namespace levycond
