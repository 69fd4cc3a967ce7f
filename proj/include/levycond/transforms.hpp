#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "levycond/functionals.hpp"
#include "levycond/killing.hpp"
#include "levycond/stable.hpp"

namespace levycond {

/// Which conditioning the h-transform realizes.
enum class Conditioning { StayPositive, AvoidOrigin };

/// Conditioning together with its weight exponent: alpha*(1-rho) for staying
/// positive, alpha-1 for avoiding the origin. The transforms are implemented
/// with unnormalized power weights; the constants C1_up, C2_up, C_times are
/// never baked in (every verified ratio cancels them).
struct HKind {
    Conditioning kind;

    static HKind stay_positive() { return HKind{Conditioning::StayPositive}; }
    static HKind avoid_origin() { return HKind{Conditioning::AvoidOrigin}; }

    double exponent(const StableParams& params) const {
        return kind == Conditioning::StayPositive ? params.gamma_stay_positive()
                                                  : params.gamma_avoid_origin();
    }

    /// AvoidOrigin needs a symmetric process with 1 < alpha <= 2 (the origin
    /// must be regular for itself).
    void validate(const StableParams& params) const;

    /// The matching kill rule at step dt (default eps_hit policy for PointZero).
    KillSpec kill_spec(const StableParams& params, double dt) const;

    /// Weight carried by a surviving path ending at `endpoint`, before the
    /// x^-gamma normalization: endpoint^gamma resp. |endpoint|^gamma.
    double weight(double endpoint, double gamma) const {
        return kind == Conditioning::StayPositive ? std::pow(endpoint, gamma)
                                                  : std::pow(std::abs(endpoint), gamma);
    }
};

/// h_up(x) = x^(alpha(1-rho)), the invariant function of the killed process Q.
double h_up(double x, const StableParams& params);

/// h_times(x) = |x|^(alpha-1), the invariant function of the point-killed process.
double h_times(double x, const StableParams& params);

/// Raised when a weighted estimator's effective sample size falls below the
/// floor (silent variance blow-up would corrupt the limit experiments).
class EssTooLowError : public std::runtime_error {
  public:
    EssTooLowError(double ess, double floor_value);
    double ess;
};

/// Raised when a rejection sampler accepts nothing.
class AcceptanceError : public std::runtime_error {
  public:
    explicit AcceptanceError(double rate);
    double acceptance_rate;
};

/// P_up_x[Z] = Q_x[Z * (X_t/x)^gamma; t < zeta] (resp. P_times_x with
/// |X_t/x|^(alpha-1) on point-killed paths), estimated by importance
/// weighting; killed paths carry weight 0. With Z == 1 this is the
/// martingale-identity check: the estimate must be 1.
MCEstimate expectation_htransform(double x, const TestFunctional& Z, double t, HKind kind,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks = 1);

/// Suite variant: all functionals evaluated on one shared path ensemble
/// (estimates are correlated across the suite but individually exact). With
/// `self_normalize` the weighted mean is divided by the empirical mean weight
/// (valid because the transform is a probability law; cuts the heavy-weight
/// noise for bounded functionals, but do not use it for the martingale
/// identity itself).
std::vector<MCEstimate> expectation_htransform_suite(double x,
                                                     std::span<const TestFunctional> suite,
                                                     double t, HKind kind,
                                                     const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks = 1,
                                                     bool self_normalize = false);

/// Options for the whole-path statistic estimator.
struct PathStatOptions {
    bool symmetrized = false;     ///< flip the path sign with probability 1/2
    bool self_normalize = false;  ///< divide by the empirical mean weight
};

/// Same weighting applied to an arbitrary statistic of the whole discretized
/// path (used by the long-horizon experiments).
MCEstimate expectation_htransform_path(double x,
                                       const std::function<double(std::span<const double>)>& stat,
                                       double t, HKind kind, const StableParams& params,
                                       const GridSpec& grid, std::uint64_t n, RngStream rng,
                                       unsigned chunks = 1, PathStatOptions opts = {});

/// phi_up(x) = P_up_x[(X_t)^-gamma] = Q_x(t < zeta)/x^gamma (and the
/// AvoidOrigin analogue). x = 0 is served by the entrance approximation at
/// x_eff = 0.05 * t^(1/alpha).
MCEstimate phi(double x, double t, HKind kind, const StableParams& params, const GridSpec& grid,
               std::uint64_t n, RngStream rng, unsigned chunks = 1);

/// Entrance approximation of P_up_0[Z] (resp. P_times_0[Z]): the h-transform
/// run from a small x, self-normalized so constants drop out. AvoidOrigin
/// ensembles are symmetrized (the entrance law at 0 is symmetric; for
/// alpha = 2 the sign flip is what realizes the even mixture).
/// Throws EssTooLowError when the weighted ESS drops below 100.
MCEstimate entrance_approximation(double x_small, const TestFunctional& Z, double t, HKind kind,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks = 1);

std::vector<MCEstimate> entrance_approximation_suite(double x_small,
                                                     std::span<const TestFunctional> suite,
                                                     double t, HKind kind,
                                                     const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks = 1);

/// Meander estimation methods.
/// Rejection: simulate from 0 over [0, epsilon + t], shift by epsilon, accept
/// paths that stay in the live region on [epsilon, epsilon + t].
/// WeightedRatio: M[Z] = P_up_x[Z (X_t)^-gamma] / P_up_x[(X_t)^-gamma] at a
/// small entrance x; the power weights cancel against the transform weights,
/// leaving the killed ensemble conditioned on survival.
struct Rejection {
    double epsilon;
};
struct WeightedRatio {
    double x_small;
};
using MeanderMethod = std::variant<Rejection, WeightedRatio>;

/// Estimate of M_up_(t)[Z] or M_times_(t)[Z].
MCEstimate meander_estimate(double t, const TestFunctional& Z, HKind kind, MeanderMethod method,
                            const StableParams& params, const GridSpec& grid, std::uint64_t n,
                            RngStream rng, unsigned chunks = 1);

std::vector<MCEstimate> meander_estimate_suite(double t, std::span<const TestFunctional> suite,
                                               HKind kind, MeanderMethod method,
                                               const StableParams& params, const GridSpec& grid,
                                               std::uint64_t n, RngStream rng,
                                               unsigned chunks = 1);

/// Floor-conditioned estimate P_0[Z_t | X_u >= -epsilon for all u <= t]
/// (the half-line variant of the conditioning limit; StayPositive only).
MCEstimate meander_floor_estimate(double t, const TestFunctional& Z, double epsilon,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks = 1);

std::vector<MCEstimate> meander_floor_estimate_suite(double t,
                                                     std::span<const TestFunctional> suite,
                                                     double epsilon, const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks = 1);

/// Horizon endpoints drawn from a meander sampler (for distributional tests).
/// With `symmetrized`, each endpoint sign is flipped with probability 1/2.
std::vector<double> meander_endpoint_samples(double t, HKind kind, MeanderMethod method,
                                             const StableParams& params, const GridSpec& grid,
                                             std::uint64_t n, RngStream rng, unsigned chunks = 1,
                                             bool symmetrized = false);

/// Weighted endpoint ensemble of the h-transform run from x_small.
struct WeightedSamples {
    std::vector<double> values;
    std::vector<double> weights;
    double ess = 0.0;
};
WeightedSamples entrance_endpoint_samples(double x_small, double t, HKind kind,
                                          const StableParams& params, const GridSpec& grid,
                                          std::uint64_t n, RngStream rng, unsigned chunks = 1,
                                          bool symmetrized = false);

/// Sign-symmetrization of a sampled ensemble: flips each value's sign with
/// probability 1/2, realizing the even mixture (law + mirrored law)/2.
void symmetrize_signs(std::vector<double>& values, RngStream rng);

// ---------------------------------------------------------------------------
// Brownian closed forms (alpha = 2, variance 2t convention).

/// Density at y of the Bessel(3)-from-0 endpoint, i.e. of sqrt(2t) * chi_3.
double bessel3_density(double y, double t);
/// CDF of the same law.
double bessel3_cdf(double y, double t);
/// Mean sqrt(2t) * 2 * sqrt(2/pi).
double bessel3_mean(double t);
/// Mode sqrt(4t).
double bessel3_mode(double t);
/// Transition density from x > 0 of the Bessel(3) bridge-free evolution:
/// (y/x) * (g(y-x) - g(y+x)) with g the N(0, 2t) density.
double bessel3_transition_density(double x, double y, double t);

/// Brownian meander endpoint CDF: Rayleigh with scale sqrt(2t).
double rayleigh_meander_cdf(double y, double t);
/// Its median sqrt(4 t ln 2).
double rayleigh_meander_median(double t);

/// Q_x(t < zeta) for Brownian motion killed on the negative half-line:
/// erf(x / sqrt(4t)) by the reflection principle.
double brownian_halfline_survival(double x, double t);

}  // namespace levycond
