#include "levycond/stable.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace levycond {

namespace {

void validate(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("StableParams: alpha must lie in (0,2], got " +
                                    std::to_string(alpha));
    if (alpha < 1.0) {
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("StableParams: rho must lie in [0,1] for alpha<1");
        if (rho == 0.0 || rho == 1.0)
            throw std::invalid_argument("StableParams: subordinator case excluded (alpha<1 with rho in {0,1})");
    } else if (alpha == 1.0) {
        if (!(rho > 0.0 && rho < 1.0))
            throw std::invalid_argument("StableParams: rho must lie in (0,1) for alpha=1");
    } else {
        const double lo = 1.0 - 1.0 / alpha;
        const double hi = 1.0 / alpha;
        if (!(rho >= lo - 1e-12 && rho <= hi + 1e-12))
            throw std::invalid_argument("StableParams: rho must lie in [1-1/alpha, 1/alpha] for alpha in (1,2]");
    }
}

}  // namespace

StableParams StableParams::make(double alpha, double rho) {
    validate(alpha, rho);
    StableParams p;
    p.alpha = alpha;
    p.rho = rho;
    p.symmetric = (rho == 0.5);
    return p;
}

StableParams StableParams::make_symmetric(double alpha) { return make(alpha, 0.5); }

GridSpec::GridSpec(double t_max_, std::size_t n_steps_) : t_max(t_max_), n_steps(n_steps_) {
    if (n_steps > 0 && !(t_max > 0.0))
        throw std::invalid_argument("GridSpec: t_max must be positive");
    if (n_steps == 0 && t_max != 0.0)
        throw std::invalid_argument("GridSpec: empty grid must have t_max = 0");
}

GridSpec GridSpec::from_dt(double t_max, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("GridSpec: dt must be positive");
    const double steps = t_max / dt;
    const auto n = static_cast<std::size_t>(std::llround(steps));
    if (n < 1 || std::abs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument("GridSpec: t_max is not a multiple of dt");
    return GridSpec(t_max, n);
}

IncrementSampler::IncrementSampler(const StableParams& params, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("IncrementSampler: dt must be positive");
    alpha_ = params.alpha;
    brownian_ = (params.alpha == 2.0);
    cauchy_ = (params.alpha == 1.0);
    inv_alpha_ = 1.0 / params.alpha;
    dt_scale_ = std::pow(dt, inv_alpha_);
    b_ = M_PI * (params.rho - 0.5);
    cauchy_drift_ = cauchy_ ? std::tan(b_) : 0.0;
    exponent_ratio_ = (1.0 - params.alpha) * inv_alpha_;
    const double cos_ab = std::cos(params.alpha * b_);
    scale_ = std::pow(cos_ab, -inv_alpha_);
}

double sample_stable_increment(const StableParams& params, double dt, RngStream rng) {
    Xoshiro256 engine(rng);
    return IncrementSampler(params, dt)(engine);
}

SamplePath simulate_path(const StableParams& params, const GridSpec& grid, double x0,
                         RngStream rng) {
    SamplePath path{grid, x0, {}, rng};
    path.values.resize(grid.n_steps + 1);
    path.values[0] = x0;
    if (grid.n_steps == 0) return path;
    Xoshiro256 engine(rng);
    const IncrementSampler inc(params, grid.dt());
    double x = x0;
    for (std::size_t k = 1; k <= grid.n_steps; ++k) {
        x += inc(engine);
        path.values[k] = x;
    }
    return path;
}

SamplePath shift_path(const SamplePath& path, double epsilon) {
    const double dt = path.grid.dt();
    const double steps = epsilon / dt;
    const auto offset = static_cast<std::size_t>(std::llround(steps));
    if (epsilon < 0.0 || std::abs(steps - static_cast<double>(offset)) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument("shift_path: epsilon is not grid-aligned");
    if (offset > path.grid.n_steps)
        throw std::invalid_argument("shift_path: epsilon beyond the grid horizon");
    const std::size_t remaining = path.grid.n_steps - offset;
    SamplePath out{GridSpec(remaining ? static_cast<double>(remaining) * dt : 0.0, remaining),
                   path.values[offset],
                   {},
                   path.seed_tag};
    out.values.assign(path.values.begin() + static_cast<std::ptrdiff_t>(offset), path.values.end());
    return out;
}

KsReport verify_scaling(const StableParams& params, double k, double t, std::size_t n,
                        RngStream rng) {
    if (!(k > 0.0 && t > 0.0)) throw std::invalid_argument("verify_scaling: k and t must be positive");
    Xoshiro256 engine(rng);
    const IncrementSampler scaled(params, k * t);
    const IncrementSampler direct(params, t);
    const double factor = std::pow(k, -1.0 / params.alpha);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = factor * scaled(engine);
    for (std::size_t i = 0; i < n; ++i) b[i] = direct(engine);
    return ks_test(a, b);
}

MCEstimate estimate_positivity(const StableParams& params, double t, std::size_t n,
                               RngStream rng) {
    if (!(t > 0.0)) throw std::invalid_argument("estimate_positivity: t must be positive");
    Xoshiro256 engine(rng);
    const IncrementSampler inc(params, t);
    MomentAccumulator acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(inc(engine) >= 0.0 ? 1.0 : 0.0);
    return acc.estimate();
}

}  // namespace levycond
