#include "levycond/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "levycond/mc.hpp"

namespace levycond {

namespace {

std::string format_msg(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return std::string(buf);
}

void check_horizon(const GridSpec& grid, double t, const char* what) {
    if (std::abs(grid.t_max - t) > 1e-9 * std::max(1.0, t))
        throw std::invalid_argument(std::string(what) + ": grid horizon must equal t");
}

std::size_t aligned_steps(double epsilon, double dt, const char* what) {
    if (epsilon < 0.0) throw std::invalid_argument(std::string(what) + ": epsilon must be >= 0");
    const double steps = epsilon / dt;
    const auto k = static_cast<std::size_t>(std::llround(steps));
    if (std::abs(steps - static_cast<double>(k)) > 1e-9 * std::max(1.0, steps))
        throw std::invalid_argument(std::string(what) + ": epsilon is not grid-aligned");
    return k;
}

void validate_start(double x, HKind kind) {
    if (kind.kind == Conditioning::StayPositive && !(x > 0.0))
        throw std::invalid_argument(
            "h-transform: x must be strictly positive (0 is the killed boundary)");
    if (kind.kind == Conditioning::AvoidOrigin && x == 0.0)
        throw std::invalid_argument("h-transform: x must be nonzero (0 is the killed boundary)");
}

// Marker bookkeeping for a suite sharing one path ensemble: the union of all
// sample indices is recorded once per path; each functional reads its own
// subset.
struct SuiteMarkers {
    std::vector<std::size_t> merged;
    std::vector<std::vector<std::size_t>> positions;  // per functional, into merged

    static SuiteMarkers build(std::span<const TestFunctional> suite, std::size_t n_steps) {
        SuiteMarkers out;
        std::vector<std::vector<std::size_t>> raw;
        raw.reserve(suite.size());
        for (const auto& z : suite) {
            raw.push_back(z.marker_indices(n_steps));
            for (std::size_t k : raw.back()) out.merged.push_back(k);
        }
        std::sort(out.merged.begin(), out.merged.end());
        out.merged.erase(std::unique(out.merged.begin(), out.merged.end()), out.merged.end());
        for (const auto& idx : raw) {
            std::vector<std::size_t> pos;
            pos.reserve(idx.size());
            for (std::size_t k : idx) {
                const auto it = std::lower_bound(out.merged.begin(), out.merged.end(), k);
                pos.push_back(static_cast<std::size_t>(it - out.merged.begin()));
            }
            out.positions.push_back(std::move(pos));
        }
        return out;
    }

    double evaluate(const TestFunctional& z, std::size_t which,
                    std::span<const double> merged_values, std::vector<double>& scratch,
                    double sign) const {
        const auto& pos = positions[which];
        scratch.resize(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) scratch[i] = sign * merged_values[pos[i]];
        return z.evaluate(scratch);
    }
};

// One killed path recording the merged marker values. Returns aliveness;
// endpoint is written only when the path survives.
struct KilledWalk {
    const IncrementSampler& inc;
    KillSampler kill;
    std::span<const std::size_t> markers;

    bool operator()(Xoshiro256& engine, double x0, std::size_t n_steps,
                    std::span<double> marginals, double& endpoint) const {
        double prev = x0;
        std::size_t mi = 0;
        for (std::size_t k = 1; k <= n_steps; ++k) {
            const double cur = prev + inc(engine);
            if (kill.kills(prev, cur, engine)) return false;
            if (mi < markers.size() && markers[mi] == k) marginals[mi++] = cur;
            prev = cur;
        }
        endpoint = prev;
        return true;
    }
};

struct SuiteAccumulators {
    std::vector<WeightedAccumulator> acc;
    void merge(const SuiteAccumulators& o) {
        if (acc.empty()) acc.resize(o.acc.size());
        for (std::size_t i = 0; i < o.acc.size(); ++i) acc[i].merge(o.acc[i]);
    }
};

// Weighted suite estimation from a killed ensemble started at x0.
// weight_mode: 0 - transform weight (endpoint/x)^gamma; 1 - unit weight on
// survivors (the self-normalized meander ratio after cancellation).
SuiteAccumulators killed_suite_run(double x0, std::span<const TestFunctional> suite,
                                   const SuiteMarkers& markers, HKind kind,
                                   const StableParams& params, const GridSpec& grid,
                                   std::uint64_t n, RngStream rng, unsigned chunks,
                                   int weight_mode, bool symmetrized) {
    const double gamma = kind.exponent(params);
    const double h_x = kind.weight(std::abs(x0), gamma);
    const KillSampler kill(kind.kill_spec(params, grid.dt()), grid.dt());

    return run_chunked_merge<SuiteAccumulators>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            Xoshiro256 engine(stream);
            const IncrementSampler inc(params, grid.dt());
            const KilledWalk walk{inc, kill, markers.merged};
            std::vector<double> merged_values(markers.merged.size());
            std::vector<double> scratch;
            SuiteAccumulators part;
            part.acc.resize(suite.size());
            for (std::uint64_t i = 0; i < paths; ++i) {
                double endpoint = 0.0;
                if (!walk(engine, x0, grid.n_steps, merged_values, endpoint)) {
                    for (auto& a : part.acc) a.add(0.0, 0.0);
                    continue;
                }
                const double sign = symmetrized ? engine.sign_flip() : 1.0;
                const double w =
                    weight_mode == 0 ? kind.weight(endpoint, gamma) / h_x : 1.0;
                for (std::size_t z = 0; z < suite.size(); ++z)
                    part.acc[z].add(w, markers.evaluate(suite[z], z, merged_values, scratch,
                                                        sign));
            }
            return part;
        });
}

}  // namespace

void HKind::validate(const StableParams& params) const {
    if (kind == Conditioning::AvoidOrigin) {
        if (!params.symmetric)
            throw std::invalid_argument("AvoidOrigin conditioning requires a symmetric process");
        if (!(params.alpha > 1.0 && params.alpha <= 2.0))
            throw std::invalid_argument("AvoidOrigin conditioning requires 1 < alpha <= 2");
    }
}

KillSpec HKind::kill_spec(const StableParams& params, double dt) const {
    if (kind == Conditioning::StayPositive) {
        KillSpec spec = KillSpec::half_line_negative();
        spec.continuous_paths = params.is_brownian();
        return spec;
    }
    return KillSpec::point_zero_for(params, dt);
}

double h_up(double x, const StableParams& params) {
    if (x < 0.0) throw std::invalid_argument("h_up: x must be nonnegative");
    return std::pow(x, params.gamma_stay_positive());
}

double h_times(double x, const StableParams& params) {
    return std::pow(std::abs(x), params.gamma_avoid_origin());
}

EssTooLowError::EssTooLowError(double ess_, double floor_value)
    : std::runtime_error(format_msg("weighted estimator refused: ESS %.1f below floor %.0f",
                                    ess_, floor_value)),
      ess(ess_) {}

AcceptanceError::AcceptanceError(double rate)
    : std::runtime_error(
          format_msg("rejection sampler accepted no paths (acceptance rate %.3g)", rate)),
      acceptance_rate(rate) {}

std::vector<MCEstimate> expectation_htransform_suite(double x,
                                                     std::span<const TestFunctional> suite,
                                                     double t, HKind kind,
                                                     const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks,
                                                     bool self_normalize) {
    kind.validate(params);
    validate_start(x, kind);
    check_horizon(grid, t, "expectation_htransform");
    const SuiteMarkers markers = SuiteMarkers::build(suite, grid.n_steps);
    const SuiteAccumulators acc =
        killed_suite_run(x, suite, markers, kind, params, grid, n, rng, chunks, 0, false);
    std::vector<MCEstimate> out;
    out.reserve(suite.size());
    for (const auto& a : acc.acc)
        out.push_back(self_normalize ? a.estimate_ratio() : a.estimate_plain());
    return out;
}

MCEstimate expectation_htransform(double x, const TestFunctional& Z, double t, HKind kind,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks) {
    return expectation_htransform_suite(x, std::span<const TestFunctional>(&Z, 1), t, kind,
                                        params, grid, n, rng, chunks)[0];
}

MCEstimate expectation_htransform_path(double x,
                                       const std::function<double(std::span<const double>)>& stat,
                                       double t, HKind kind, const StableParams& params,
                                       const GridSpec& grid, std::uint64_t n, RngStream rng,
                                       unsigned chunks, PathStatOptions opts) {
    kind.validate(params);
    validate_start(x, kind);
    check_horizon(grid, t, "expectation_htransform_path");
    const double gamma = kind.exponent(params);
    const double h_x = kind.weight(x, gamma);
    const KillSampler kill(kind.kill_spec(params, grid.dt()), grid.dt());

    auto acc = run_chunked_merge<WeightedAccumulator>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            Xoshiro256 engine(stream);
            const IncrementSampler inc(params, grid.dt());
            std::vector<double> values(grid.n_steps + 1);
            WeightedAccumulator part;
            for (std::uint64_t i = 0; i < paths; ++i) {
                values[0] = x;
                bool alive = true;
                for (std::size_t k = 1; k <= grid.n_steps; ++k) {
                    values[k] = values[k - 1] + inc(engine);
                    if (kill.kills(values[k - 1], values[k], engine)) {
                        alive = false;
                        break;
                    }
                }
                if (!alive) {
                    part.add(0.0, 0.0);
                    continue;
                }
                if (opts.symmetrized && engine.sign_flip() < 0.0)
                    for (auto& v : values) v = -v;
                part.add(kind.weight(values.back(), gamma) / h_x, stat(values));
            }
            return part;
        });
    return opts.self_normalize ? acc.estimate_ratio() : acc.estimate_plain();
}

MCEstimate phi(double x, double t, HKind kind, const StableParams& params, const GridSpec& grid,
               std::uint64_t n, RngStream rng, unsigned chunks) {
    kind.validate(params);
    double x_eff = x;
    if (x == 0.0) x_eff = 0.05 * std::pow(t, 1.0 / params.alpha);
    const double gamma = kind.exponent(params);
    const MCEstimate surv = survival_probability(x_eff, t, kind.kill_spec(params, grid.dt()),
                                                 params, grid, n, rng, chunks);
    const double h_x = kind.weight(x_eff, gamma);
    MCEstimate out = surv;
    out.mean /= h_x;
    out.std_error /= h_x;
    return out;
}

std::vector<MCEstimate> entrance_approximation_suite(double x_small,
                                                     std::span<const TestFunctional> suite,
                                                     double t, HKind kind,
                                                     const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks) {
    kind.validate(params);
    validate_start(x_small, kind);
    check_horizon(grid, t, "entrance_approximation");
    const SuiteMarkers markers = SuiteMarkers::build(suite, grid.n_steps);
    const bool symmetrized = kind.kind == Conditioning::AvoidOrigin;
    const SuiteAccumulators acc = killed_suite_run(x_small, suite, markers, kind, params, grid, n,
                                                   rng, chunks, 0, symmetrized);
    std::vector<MCEstimate> out;
    out.reserve(suite.size());
    for (const auto& a : acc.acc) {
        if (a.ess() < 100.0) throw EssTooLowError(a.ess(), 100.0);
        out.push_back(a.estimate_ratio());
    }
    return out;
}

MCEstimate entrance_approximation(double x_small, const TestFunctional& Z, double t, HKind kind,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks) {
    return entrance_approximation_suite(x_small, std::span<const TestFunctional>(&Z, 1), t, kind,
                                        params, grid, n, rng, chunks)[0];
}

namespace {

// Core of the rejection meander: walks [0, eps + t] from 0, enforces the live
// region on [eps, eps + t], hands accepted shifted paths to `sink`.
template <class Sink>
void rejection_scan(const Rejection& method, HKind kind, const StableParams& params,
                    const GridSpec& grid, std::uint64_t paths, RngStream stream,
                    std::span<const std::size_t> markers, Sink&& sink) {
    const double dt = grid.dt();
    const std::size_t k0 = aligned_steps(method.epsilon, dt, "meander rejection");
    const std::size_t total_steps = k0 + grid.n_steps;
    const KillSampler kill(kind.kill_spec(params, dt), dt);

    Xoshiro256 engine(stream);
    const IncrementSampler inc(params, dt);
    std::vector<double> marginals(markers.size());
    for (std::uint64_t i = 0; i < paths; ++i) {
        double prev = 0.0;
        bool ok = true;
        std::size_t mi = 0;
        if (k0 == 0 && kind.kind == Conditioning::AvoidOrigin) ok = false;
        for (std::size_t k = 1; ok && k <= total_steps; ++k) {
            const double cur = prev + inc(engine);
            if (k > k0) {
                if (kill.kills(prev, cur, engine)) ok = false;
            } else if (k == k0) {
                if (kind.kind == Conditioning::StayPositive) {
                    if (cur < 0.0) ok = false;
                } else if (std::abs(cur) <= kill.spec().eps_hit) {
                    ok = false;
                }
            }
            if (ok && mi < markers.size() && k == k0 + markers[mi]) marginals[mi++] = cur;
            prev = cur;
        }
        if (!ok) continue;
        sink(std::span<const double>(marginals), prev);
    }
}

}  // namespace

std::vector<MCEstimate> meander_estimate_suite(double t, std::span<const TestFunctional> suite,
                                               HKind kind, MeanderMethod method,
                                               const StableParams& params, const GridSpec& grid,
                                               std::uint64_t n, RngStream rng, unsigned chunks) {
    kind.validate(params);
    check_horizon(grid, t, "meander_estimate");
    const SuiteMarkers markers = SuiteMarkers::build(suite, grid.n_steps);

    if (std::holds_alternative<WeightedRatio>(method)) {
        const double x_small = std::get<WeightedRatio>(method).x_small;
        validate_start(x_small, kind);
        // the functional weight (X_t)^-gamma cancels the transform weight
        // (X_t/x)^gamma, so survivors carry unit weight and the ratio is the
        // killed ensemble conditioned on survival
        const bool symmetrized = kind.kind == Conditioning::AvoidOrigin;
        const SuiteAccumulators acc = killed_suite_run(x_small, suite, markers, kind, params,
                                                       grid, n, rng, chunks, 1, symmetrized);
        std::vector<MCEstimate> out;
        out.reserve(suite.size());
        for (const auto& a : acc.acc) {
            if (a.ess() < 100.0) throw EssTooLowError(a.ess(), 100.0);
            out.push_back(a.estimate_ratio());
        }
        return out;
    }

    const auto& rej = std::get<Rejection>(method);
    struct ChunkAcc {
        std::vector<MomentAccumulator> stats;
        std::uint64_t total = 0;
        void merge(const ChunkAcc& o) {
            if (stats.empty()) stats.resize(o.stats.size());
            for (std::size_t i = 0; i < o.stats.size(); ++i) stats[i].merge(o.stats[i]);
            total += o.total;
        }
    };
    auto acc = run_chunked_merge<ChunkAcc>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            ChunkAcc part;
            part.stats.resize(suite.size());
            part.total = paths;
            std::vector<double> scratch;
            rejection_scan(rej, kind, params, grid, paths, stream, markers.merged,
                           [&](std::span<const double> merged_values, double) {
                               for (std::size_t z = 0; z < suite.size(); ++z)
                                   part.stats[z].add(markers.evaluate(suite[z], z, merged_values,
                                                                      scratch, 1.0));
                           });
            return part;
        });
    std::vector<MCEstimate> out;
    out.reserve(suite.size());
    for (const auto& stat : acc.stats) {
        if (stat.n == 0) throw AcceptanceError(0.0);
        MCEstimate est = stat.estimate();
        est.ess = static_cast<double>(stat.n);
        est.n = acc.total;
        out.push_back(est);
    }
    return out;
}

MCEstimate meander_estimate(double t, const TestFunctional& Z, HKind kind, MeanderMethod method,
                            const StableParams& params, const GridSpec& grid, std::uint64_t n,
                            RngStream rng, unsigned chunks) {
    return meander_estimate_suite(t, std::span<const TestFunctional>(&Z, 1), kind, method, params,
                                  grid, n, rng, chunks)[0];
}

std::vector<MCEstimate> meander_floor_estimate_suite(double t,
                                                     std::span<const TestFunctional> suite,
                                                     double epsilon, const StableParams& params,
                                                     const GridSpec& grid, std::uint64_t n,
                                                     RngStream rng, unsigned chunks) {
    check_horizon(grid, t, "meander_floor_estimate");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("meander_floor_estimate: epsilon must be positive");
    const SuiteMarkers markers = SuiteMarkers::build(suite, grid.n_steps);

    struct ChunkAcc {
        std::vector<MomentAccumulator> stats;
        std::uint64_t total = 0;
        void merge(const ChunkAcc& o) {
            if (stats.empty()) stats.resize(o.stats.size());
            for (std::size_t i = 0; i < o.stats.size(); ++i) stats[i].merge(o.stats[i]);
            total += o.total;
        }
    };
    const bool bridge = params.is_brownian();
    const double inv_dt = 1.0 / grid.dt();
    auto acc = run_chunked_merge<ChunkAcc>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            Xoshiro256 engine(stream);
            const IncrementSampler inc(params, grid.dt());
            std::vector<double> merged_values(markers.merged.size());
            std::vector<double> scratch;
            ChunkAcc part;
            part.stats.resize(suite.size());
            part.total = paths;
            for (std::uint64_t i = 0; i < paths; ++i) {
                double prev = 0.0;
                bool ok = true;
                std::size_t mi = 0;
                for (std::size_t k = 1; k <= grid.n_steps; ++k) {
                    const double cur = prev + inc(engine);
                    if (cur < -epsilon ||
                        (bridge && engine.uniform01() <
                                       std::exp(-(prev + epsilon) * (cur + epsilon) * inv_dt))) {
                        ok = false;
                        break;
                    }
                    if (mi < markers.merged.size() && markers.merged[mi] == k)
                        merged_values[mi++] = cur;
                    prev = cur;
                }
                if (!ok) continue;
                for (std::size_t z = 0; z < suite.size(); ++z)
                    part.stats[z].add(markers.evaluate(suite[z], z, merged_values, scratch, 1.0));
            }
            return part;
        });
    std::vector<MCEstimate> out;
    out.reserve(suite.size());
    for (const auto& stat : acc.stats) {
        if (stat.n == 0) throw AcceptanceError(0.0);
        MCEstimate est = stat.estimate();
        est.ess = static_cast<double>(stat.n);
        est.n = acc.total;
        out.push_back(est);
    }
    return out;
}

MCEstimate meander_floor_estimate(double t, const TestFunctional& Z, double epsilon,
                                  const StableParams& params, const GridSpec& grid,
                                  std::uint64_t n, RngStream rng, unsigned chunks) {
    return meander_floor_estimate_suite(t, std::span<const TestFunctional>(&Z, 1), epsilon,
                                        params, grid, n, rng, chunks)[0];
}

std::vector<double> meander_endpoint_samples(double t, HKind kind, MeanderMethod method,
                                             const StableParams& params, const GridSpec& grid,
                                             std::uint64_t n, RngStream rng, unsigned chunks,
                                             bool symmetrized) {
    kind.validate(params);
    check_horizon(grid, t, "meander_endpoint_samples");
    const std::vector<std::size_t> no_markers;

    auto parts = run_chunked<std::vector<double>>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            std::vector<double> endpoints;
            if (std::holds_alternative<WeightedRatio>(method)) {
                const double x_small = std::get<WeightedRatio>(method).x_small;
                validate_start(x_small, kind);
                Xoshiro256 engine(stream);
                const IncrementSampler inc(params, grid.dt());
                const KilledWalk walk{inc, KillSampler(kind.kill_spec(params, grid.dt()), grid.dt()), no_markers};
                for (std::uint64_t i = 0; i < paths; ++i) {
                    double endpoint = 0.0;
                    if (!walk(engine, x_small, grid.n_steps, {}, endpoint)) continue;
                    if (symmetrized || kind.kind == Conditioning::AvoidOrigin)
                        endpoint *= engine.sign_flip();
                    endpoints.push_back(endpoint);
                }
            } else {
                Xoshiro256 coin(stream.substream(0x5151));
                rejection_scan(std::get<Rejection>(method), kind, params, grid, paths, stream,
                               no_markers, [&](std::span<const double>, double endpoint) {
                                   if (symmetrized) endpoint *= coin.sign_flip();
                                   endpoints.push_back(endpoint);
                               });
            }
            return endpoints;
        });
    std::vector<double> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    if (out.empty()) throw AcceptanceError(0.0);
    return out;
}

WeightedSamples entrance_endpoint_samples(double x_small, double t, HKind kind,
                                          const StableParams& params, const GridSpec& grid,
                                          std::uint64_t n, RngStream rng, unsigned chunks,
                                          bool symmetrized) {
    kind.validate(params);
    validate_start(x_small, kind);
    check_horizon(grid, t, "entrance_endpoint_samples");
    const double gamma = kind.exponent(params);
    const double h_x = kind.weight(x_small, gamma);
    const KillSampler kill(kind.kill_spec(params, grid.dt()), grid.dt());
    const std::vector<std::size_t> no_markers;

    auto parts = run_chunked<WeightedSamples>(
        n, chunks, rng, [&](unsigned, std::uint64_t paths, RngStream stream) {
            Xoshiro256 engine(stream);
            const IncrementSampler inc(params, grid.dt());
            const KilledWalk walk{inc, kill, no_markers};
            WeightedSamples part;
            for (std::uint64_t i = 0; i < paths; ++i) {
                double endpoint = 0.0;
                if (!walk(engine, x_small, grid.n_steps, {}, endpoint)) continue;
                const double w = kind.weight(endpoint, gamma) / h_x;
                if (symmetrized || kind.kind == Conditioning::AvoidOrigin)
                    endpoint *= engine.sign_flip();
                part.values.push_back(endpoint);
                part.weights.push_back(w);
            }
            return part;
        });
    WeightedSamples out;
    double sum_w = 0.0, sum_w2 = 0.0;
    for (auto& p : parts) {
        out.values.insert(out.values.end(), p.values.begin(), p.values.end());
        out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
    }
    for (double w : out.weights) {
        sum_w += w;
        sum_w2 += w * w;
    }
    out.ess = sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0;
    if (out.ess < 100.0) throw EssTooLowError(out.ess, 100.0);
    return out;
}

void symmetrize_signs(std::vector<double>& values, RngStream rng) {
    Xoshiro256 engine(rng);
    for (auto& v : values) v *= engine.sign_flip();
}

// ---------------------------------------------------------------------------

double bessel3_density(double y, double t) {
    if (y < 0.0) return 0.0;
    const double s2 = 2.0 * t;  // per-coordinate variance
    return std::sqrt(2.0 / M_PI) * y * y / (s2 * std::sqrt(s2)) * std::exp(-y * y / (2.0 * s2));
}

double bessel3_cdf(double y, double t) {
    if (y <= 0.0) return 0.0;
    return std::erf(y / std::sqrt(4.0 * t)) -
           y * std::exp(-y * y / (4.0 * t)) / std::sqrt(M_PI * t);
}

double bessel3_mean(double t) { return std::sqrt(2.0 * t) * 2.0 * std::sqrt(2.0 / M_PI); }

double bessel3_mode(double t) { return std::sqrt(4.0 * t); }

double bessel3_transition_density(double x, double y, double t) {
    if (y <= 0.0 || x <= 0.0) return 0.0;
    const double var = 2.0 * t;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * var);
    const double gm = norm * std::exp(-(y - x) * (y - x) / (2.0 * var));
    const double gp = norm * std::exp(-(y + x) * (y + x) / (2.0 * var));
    return (y / x) * (gm - gp);
}

double rayleigh_meander_cdf(double y, double t) {
    if (y <= 0.0) return 0.0;
    return 1.0 - std::exp(-y * y / (4.0 * t));
}

double rayleigh_meander_median(double t) { return std::sqrt(4.0 * t * std::log(2.0)); }

double brownian_halfline_survival(double x, double t) {
    return std::erf(x / std::sqrt(4.0 * t));
}

}  // namespace levycond
