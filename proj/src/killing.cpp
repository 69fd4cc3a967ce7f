#include "levycond/killing.hpp"

#include <cmath>
#include <stdexcept>

#include "levycond/mc.hpp"

namespace levycond {

KillSpec KillSpec::point_zero(double eps_hit, bool continuous_paths) {
    if (!(eps_hit > 0.0)) throw std::invalid_argument("KillSpec: eps_hit must be positive");
    return KillSpec{Kind::PointZero, eps_hit, continuous_paths};
}

KillSpec KillSpec::point_zero_for(const StableParams& params, double dt, double coeff) {
    return point_zero(coeff * std::pow(dt, 1.0 / params.alpha), params.is_brownian());
}

std::optional<std::size_t> first_passage_negative(const SamplePath& path) {
    for (std::size_t k = 1; k < path.values.size(); ++k)
        if (path.values[k] < 0.0) return k;
    return std::nullopt;
}

std::optional<std::size_t> first_hit_zero(const SamplePath& path, double eps_hit,
                                          bool continuous_paths) {
    if (path.x0 == 0.0) throw std::invalid_argument("first_hit_zero: x0 must be nonzero");
    if (!(eps_hit > 0.0)) throw std::invalid_argument("first_hit_zero: eps_hit must be positive");
    const KillSpec spec = KillSpec::point_zero(eps_hit, continuous_paths);
    for (std::size_t k = 1; k < path.values.size(); ++k)
        if (spec.kills(path.values[k - 1], path.values[k])) return k;
    return std::nullopt;
}

KilledPath kill_path(const SamplePath& path, const KillSpec& spec) {
    std::optional<std::size_t> hit;
    if (spec.kind == KillSpec::Kind::HalfLineNegative) {
        hit = first_passage_negative(path);
    } else {
        hit = first_hit_zero(path, spec.eps_hit, spec.continuous_paths);
    }
    return KilledPath{path, !hit.has_value(), hit, spec.kind};
}

ReflectedPath reflected_path(const SamplePath& path) {
    ReflectedPath out{path, {}, {}};
    out.running_min.resize(path.values.size());
    out.reflected.resize(path.values.size());
    double running = path.values.empty() ? 0.0 : path.values[0];
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        running = std::min(running, path.values[k]);
        out.running_min[k] = running;
        out.reflected[k] = path.values[k] - running;
    }
    return out;
}

MCEstimate survival_probability(double x, double t, const KillSpec& spec,
                                const StableParams& params, const GridSpec& grid,
                                std::uint64_t n, RngStream rng, unsigned chunks) {
    if (spec.kind == KillSpec::Kind::HalfLineNegative && !(x > 0.0))
        throw std::invalid_argument("survival_probability: x must be positive for the half-line kill");
    if (spec.kind == KillSpec::Kind::PointZero && x == 0.0)
        throw std::invalid_argument("survival_probability: x = 0 is killed instantly (origin regular for itself)");
    if (std::abs(grid.t_max - t) > 1e-9 * std::max(1.0, t))
        throw std::invalid_argument("survival_probability: grid horizon must equal t");

    const KillSampler sampler(spec, grid.dt());
    auto acc = run_chunked_merge<MomentAccumulator>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            Xoshiro256 engine(stream);
            const IncrementSampler inc(params, grid.dt());
            MomentAccumulator part;
            for (std::uint64_t i = 0; i < paths; ++i) {
                double prev = x;
                bool alive = true;
                for (std::size_t k = 1; k <= grid.n_steps; ++k) {
                    const double cur = prev + inc(engine);
                    if (sampler.kills(prev, cur, engine)) {
                        alive = false;
                        break;
                    }
                    prev = cur;
                }
                part.add(alive ? 1.0 : 0.0);
            }
            return part;
        });
    return acc.estimate();
}

}  // namespace levycond
