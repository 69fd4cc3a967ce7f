#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "levycond/stable.hpp"

namespace levycond {

/// Killing rule: on entering the negative half-line, or on hitting the point 0.
///
/// Point hits are detected by proximity |X| <= eps_hit; a bare sign change is
/// a hit only for continuous paths (alpha = 2), where crossing a level implies
/// touching it. Jump paths cross without hitting almost surely.
struct KillSpec {
    enum class Kind { HalfLineNegative, PointZero };

    Kind kind = Kind::HalfLineNegative;
    double eps_hit = 0.0;
    bool continuous_paths = false;

    static KillSpec half_line_negative() { return KillSpec{Kind::HalfLineNegative, 0.0, false}; }
    static KillSpec point_zero(double eps_hit, bool continuous_paths = false);

    /// Point-zero spec with the default radius policy eps_hit = coeff * dt^(1/alpha).
    static KillSpec point_zero_for(const StableParams& params, double dt, double coeff = 0.5);

    /// Stateless detection step: true if the move from prev (at k-1) to x (at k>=1) kills.
    bool kills(double prev, double x) const {
        if (kind == Kind::HalfLineNegative) return x < 0.0;
        if (std::abs(x) <= eps_hit) return true;
        return continuous_paths && prev * x < 0.0;
    }
};

/// Kill step used inside the Monte Carlo estimators. For jump paths it is the
/// grid detection above. For alpha = 2 it additionally samples the exact
/// Brownian-bridge crossing probability between grid points, which removes
/// the O(sqrt(dt)) overshoot bias of pure grid-sign detection: under the
/// variance-2t convention a bridge between same-side values a, b over one
/// step dips to the barrier with probability exp(-a*b/dt).
class KillSampler {
  public:
    KillSampler(const KillSpec& spec, double dt) : spec_(spec), inv_dt_(1.0 / dt) {}

    bool kills(double prev, double cur, Xoshiro256& rng) const {
        if (spec_.kind == KillSpec::Kind::HalfLineNegative) {
            if (cur < 0.0) return true;
            if (!spec_.continuous_paths) return false;
            return rng.uniform01() < std::exp(-prev * cur * inv_dt_);
        }
        if (spec_.continuous_paths) {
            if (cur == 0.0 || prev * cur < 0.0) return true;
            return rng.uniform01() < std::exp(-std::abs(prev * cur) * inv_dt_);
        }
        return std::abs(cur) <= spec_.eps_hit;
    }

    const KillSpec& spec() const { return spec_; }

  private:
    KillSpec spec_;
    double inv_dt_;
};

/// Path together with its detected lifetime under a KillSpec.
struct KilledPath {
    SamplePath path;
    bool alive = true;
    std::optional<std::size_t> zeta_index;  // first index where detection holds
    KillSpec::Kind kill_kind = KillSpec::Kind::HalfLineNegative;
};

/// Path with its running minimum and the reflected coordinate R = X - min X.
struct ReflectedPath {
    SamplePath path;
    std::vector<double> running_min;
    std::vector<double> reflected;
};

/// Smallest k >= 1 with values[k] < 0, if any.
std::optional<std::size_t> first_passage_negative(const SamplePath& path);

/// Smallest k >= 1 with |values[k]| <= eps_hit (or a sign change when
/// continuous_paths), if any. Requires x0 != 0 and eps_hit > 0.
std::optional<std::size_t> first_hit_zero(const SamplePath& path, double eps_hit,
                                          bool continuous_paths = false);

/// Wraps detection into a KilledPath.
KilledPath kill_path(const SamplePath& path, const KillSpec& spec);

/// Running minimum and reflected coordinates of a path.
ReflectedPath reflected_path(const SamplePath& path);

/// Monte Carlo estimate of Q_x(t < zeta) or P0_x(t < zeta) on the grid.
/// x must be in the live region of the spec (x > 0 for the half-line kill,
/// x != 0 for the point kill).
MCEstimate survival_probability(double x, double t, const KillSpec& spec,
                                const StableParams& params, const GridSpec& grid,
                                std::uint64_t n, RngStream rng, unsigned chunks = 1);

}  // namespace levycond
