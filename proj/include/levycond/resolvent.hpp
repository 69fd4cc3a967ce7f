#pragma once

#include <stdexcept>
#include <vector>

namespace levycond {

/// Tolerances for the resolvent quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_depth = 48;      ///< adaptive bisection depth per panel
    int tail_terms = 56;     ///< half-period terms in the oscillatory tail
};

/// Raised when the adaptive or accelerated quadrature cannot reach tolerance.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the q -> 0 extrapolation ladder is not Cauchy.
class ExtrapolationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Resolvent density u_q(x) = (1/pi) * Int_0^inf cos(x l) / (q + l^alpha) dl
/// for the symmetric stable semigroup, 1 < alpha <= 2, q > 0. Even in x.
/// The tail is summed between consecutive cosine zeros with alternating-series
/// acceleration; the non-oscillatory remainder uses an analytic power series.
double u_q(double x, double q, double alpha, const QuadratureSpec& spec = {});

/// Closed form u_q(0) = q^(1/alpha - 1) / (alpha * sin(pi/alpha)).
double u_q0_closed(double q, double alpha);

/// u_q(0) - u_q(x) computed as the single well-conditioned integral
/// (1/pi) * Int (1 - cos(x l)) / (q + l^alpha) dl (no large-value cancellation,
/// so q can be taken very small).
double resolvent_difference(double q, double x, double alpha,
                            const QuadratureSpec& spec = {});

/// h_times(x) = lim_{q->0+} (u_q(0) - u_q(x)), extrapolated from a geometric
/// q-ladder with a fitted power-law model h - A q^theta.
double h_times_via_resolvent(double x, double alpha, const QuadratureSpec& spec = {});

/// C_times extraction over an x-grid: h_times(x) must equal |x|^(alpha-1)/C
/// with C independent of x.
struct CTimesResult {
    double c_times = 0.0;     ///< mean of |x|^(alpha-1) / h_times(x) over the grid
    double rel_spread = 0.0;  ///< sample std-dev across the grid / mean
    double slope = 0.0;       ///< log-log slope of h_times; must be alpha-1
    std::vector<double> xs;
    std::vector<double> h_values;
};
CTimesResult extract_c_times(double alpha, const QuadratureSpec& spec = {},
                             double spread_tol = 1e-3);

}  // namespace levycond
