#include "levycond/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace levycond {

double ks_tail(double lambda) {
    if (lambda < 1e-8) return 1.0;
    if (lambda < 1.18) {
        // theta-function form, rapidly convergent for small lambda
        const double f = M_PI * M_PI / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int k = 1; k <= 20; k += 2) {
            const double term = std::exp(-f * k * k);
            sum += term;
            if (term < 1e-18) break;
        }
        return std::clamp(1.0 - std::sqrt(2.0 * M_PI) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d, double ne) {
    if (ne <= 0.0) return 1.0;
    const double rn = std::sqrt(ne);
    return ks_tail((rn + 0.12 + 0.11 / rn) * d);
}

KsReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f - lo), std::abs(f - hi)});
    }
    return KsReport{d, ks_pvalue(d, n), n};
}

KsReport ks_test(std::span<const double> a, std::span<const double> b) {
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double na = static_cast<double>(x.size());
    const double nb = static_cast<double>(y.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    return KsReport{d, ks_pvalue(d, ne), ne};
}

KsReport ks_test_weighted(std::span<const double> samples, std::span<const double> weights,
                          const std::function<double(double)>& cdf) {
    if (samples.size() != weights.size())
        throw std::invalid_argument("ks_test_weighted: size mismatch");
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
    double total_w = 0.0, total_w2 = 0.0;
    for (double w : weights) {
        total_w += w;
        total_w2 += w * w;
    }
    if (total_w <= 0.0) throw std::invalid_argument("ks_test_weighted: zero total weight");
    double cum = 0.0;
    double d = 0.0;
    for (std::size_t idx : order) {
        const double f = cdf(samples[idx]);
        d = std::max(d, std::abs(f - cum / total_w));
        cum += weights[idx];
        d = std::max(d, std::abs(f - cum / total_w));
    }
    const double ess = total_w * total_w / total_w2;
    return KsReport{d, ks_pvalue(d, ess), ess};
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0,1)");
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = 0.5 * std::erfc(-mid / M_SQRT2);
        (cdf < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bonferroni_z(std::size_t m, double alpha_family) {
    if (m == 0) return 3.0;
    const double per_cell = alpha_family / static_cast<double>(m);
    const double z = normal_quantile(1.0 - 0.5 * per_cell);
    return std::max(3.0, z);
}

}  // namespace levycond
