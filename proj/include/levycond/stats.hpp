#pragma once

#include <cstdint>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace levycond {

/// Monte Carlo estimate with its standard error.
struct MCEstimate {
    std::uint64_t n = 0;        ///< number of samples (killed paths included)
    double mean = 0.0;
    double std_error = 0.0;
    double ess = 0.0;           ///< effective sample size of the weighted ensemble

    /// |mean - target| <= k standard errors.
    bool within(double target, double k_sigma) const {
        return std::abs(mean - target) <= k_sigma * std_error;
    }
};

/// SE of a difference of independent estimates.
inline double combined_se(const MCEstimate& a, const MCEstimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

/// Plain-sum moment accumulator; mergeable across chunks in fixed order.
struct MomentAccumulator {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const MomentAccumulator& o) {
        n += o.n;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double v = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return v > 0.0 ? v : 0.0;
    }
    MCEstimate estimate() const {
        MCEstimate e;
        e.n = n;
        e.mean = mean();
        e.std_error = n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
        e.ess = static_cast<double>(n);
        return e;
    }
};

/// Accumulator for weighted Monte Carlo sums; killed paths enter with w = 0.
/// Supports the plain estimator mean(w*z) and the self-normalized ratio
/// sum(w*z)/sum(w).
struct WeightedAccumulator {
    std::uint64_t n = 0;  ///< all samples, zero-weight ones included
    double sum_w = 0.0;
    double sum_w2 = 0.0;
    double sum_wz = 0.0;
    double sum_w2z = 0.0;
    double sum_w2z2 = 0.0;

    void add(double w, double z) {
        ++n;
        const double wz = w * z;
        sum_w += w;
        sum_w2 += w * w;
        sum_wz += wz;
        sum_w2z += w * wz;
        sum_w2z2 += wz * wz;
    }
    void merge(const WeightedAccumulator& o) {
        n += o.n;
        sum_w += o.sum_w;
        sum_w2 += o.sum_w2;
        sum_wz += o.sum_wz;
        sum_w2z += o.sum_w2z;
        sum_w2z2 += o.sum_w2z2;
    }
    double ess() const { return sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0; }

    /// Unnormalized estimate of E[w z]: sample mean of w*z over all n paths.
    MCEstimate estimate_plain() const {
        MCEstimate e;
        e.n = n;
        e.ess = ess();
        if (n == 0) return e;
        const double m = sum_wz / static_cast<double>(n);
        e.mean = m;
        if (n > 1) {
            const double var =
                (sum_w2z2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
            e.std_error = var > 0.0 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
        }
        return e;
    }

    /// Self-normalized ratio sum(w z)/sum(w) with delta-method standard error.
    MCEstimate estimate_ratio() const {
        MCEstimate e;
        e.n = n;
        e.ess = ess();
        if (sum_w <= 0.0) return e;
        const double r = sum_wz / sum_w;
        e.mean = r;
        const double num = sum_w2z2 - 2.0 * r * sum_w2z + r * r * sum_w2;
        e.std_error = num > 0.0 ? std::sqrt(num) / sum_w : 0.0;
        return e;
    }
};

/// Kolmogorov-Smirnov test report.
struct KsReport {
    double d_stat = 0.0;
    double p_value = 1.0;
    double n_effective = 0.0;
    bool passes(double level = 0.01) const { return p_value >= level; }
};

/// Asymptotic Kolmogorov tail probability Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double ks_tail(double lambda);

/// P-value for a KS statistic d at effective sample size ne.
double ks_pvalue(double d, double ne);

/// One-sample KS test of `samples` against a CDF. Samples are copied and sorted.
KsReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS test.
KsReport ks_test(std::span<const double> a, std::span<const double> b);

/// Weighted one-sample KS test: the empirical CDF uses normalized weights and
/// the p-value is evaluated at the ensemble's effective sample size.
KsReport ks_test_weighted(std::span<const double> samples, std::span<const double> weights,
                          const std::function<double(double)>& cdf);

/// Standard normal quantile (bisection on erfc; accuracy ~1e-12).
double normal_quantile(double p);

/// Two-sided per-cell z threshold at family level `alpha_family` over m cells
/// (Bonferroni), never below 3.
double bonferroni_z(std::size_t m, double alpha_family = 0.01);

}  // namespace levycond
