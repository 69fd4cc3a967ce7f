#include "levycond/resolvent.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace levycond {

namespace {

void check_domain(double q, double alpha) {
    if (!(q > 0.0)) throw std::invalid_argument("resolvent: q must be positive");
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("resolvent: alpha must lie in (1,2]");
}

struct Quadrature {
    const QuadratureSpec& spec;

    double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                       double fb, double fm, double whole, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * spec.abs_tol || (b - a) < 1e-14 * std::max(1.0, std::abs(a)))
            return left + right + delta / 15.0;
        if (depth <= 0)
            throw QuadratureError("adaptive quadrature: depth exhausted on [" +
                                  std::to_string(a) + ", " + std::to_string(b) + "]");
        return simpson_rec(f, a, fa, m, fm, flm, left, depth - 1) +
               simpson_rec(f, m, fm, b, fb, frm, right, depth - 1);
    }

    double adaptive(const std::function<double(double)>& f, double a, double b) const {
        if (a >= b) return 0.0;
        const double fa = f(a);
        const double fb = f(b);
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return simpson_rec(f, a, fa, b, fb, fm, whole, spec.max_depth);
    }

    /// Integral over [0, b] split into dyadic panels around the scale `knee`.
    double panels(const std::function<double(double)>& f, double b, double knee) const {
        if (b <= 0.0) return 0.0;
        double total = 0.0;
        double lo = 0.0;
        double hi = std::min(std::max(knee, 1e-8), b);
        for (;;) {
            total += adaptive(f, lo, hi);
            if (hi >= b) break;
            lo = hi;
            hi = std::min(2.0 * hi, b);
        }
        return total;
    }

    /// Sum of an alternating tail via iterated averaging of partial sums.
    double accelerated_alternating(const std::vector<double>& terms) const {
        std::vector<double> s(terms.size());
        double run = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            run += terms[i];
            s[i] = run;
        }
        std::size_t m = s.size();
        while (m > 1) {
            for (std::size_t i = 0; i + 1 < m; ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
            --m;
        }
        return s[0];
    }
};

/// Analytic tail Int_M^inf dl / (q + l^alpha); requires q * M^-alpha <= 1/4.
double plain_tail(double M, double q, double alpha) {
    const double ratio = q * std::pow(M, -alpha);
    if (!(ratio <= 0.25))
        throw QuadratureError("resolvent tail: expansion point too small (q M^-alpha > 1/4)");
    double sum = 0.0;
    double qj = 1.0;  // (-q)^j
    for (int j = 0; j < 200; ++j) {
        const double expo = alpha * (j + 1) - 1.0;
        const double term = qj * std::pow(M, -expo) / expo;
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) return sum;
        qj *= -q;
    }
    throw QuadratureError("resolvent tail: series did not converge");
}

/// Smallest positive zero of cos(x*l) at or above `at_least`.
double cosine_zero_at_least(double x, double at_least) {
    const double half_period = M_PI / (2.0 * x);
    double m = std::ceil((at_least / half_period - 1.0) / 2.0);
    if (m < 0.0) m = 0.0;
    return (2.0 * m + 1.0) * half_period;
}

/// Int_{z0}^inf cos(x l)/(q + l^alpha) dl with z0 a cosine zero, summed between
/// consecutive zeros and accelerated.
double oscillatory_tail(double z0, double x, double q, double alpha, const Quadrature& quad) {
    const double period = M_PI / x;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(quad.spec.tail_terms));
    auto f = [&](double l) { return std::cos(x * l) / (q + std::pow(l, alpha)); };
    double lo = z0;
    for (int k = 0; k < quad.spec.tail_terms; ++k) {
        const double hi = lo + period;
        terms.push_back(quad.adaptive(f, lo, hi));
        lo = hi;
    }
    for (std::size_t k = 2; k + 1 < terms.size(); ++k) {
        if (terms[k] * terms[k + 1] > 0.0)
            throw QuadratureError("oscillatory tail: terms stopped alternating");
    }
    return quad.accelerated_alternating(terms);
}

}  // namespace

double u_q0_closed(double q, double alpha) {
    check_domain(q, alpha);
    return std::pow(q, 1.0 / alpha - 1.0) / (alpha * std::sin(M_PI / alpha));
}

double u_q(double x, double q, double alpha, const QuadratureSpec& spec) {
    check_domain(q, alpha);
    const Quadrature quad{spec};
    const double ax = std::abs(x);
    const double knee = std::pow(q, 1.0 / alpha);

    if (ax == 0.0) {
        const double M = std::max(std::pow(8.0 * q, 1.0 / alpha), 10.0);
        auto f = [&](double l) { return 1.0 / (q + std::pow(l, alpha)); };
        return (quad.panels(f, M, knee) + plain_tail(M, q, alpha)) / M_PI;
    }

    const double z0 = cosine_zero_at_least(ax, std::max(std::pow(8.0 * q, 1.0 / alpha), 1e-8));
    auto f = [&](double l) { return std::cos(ax * l) / (q + std::pow(l, alpha)); };
    const double head = quad.panels(f, z0, knee);
    const double tail = oscillatory_tail(z0, ax, q, alpha, quad);
    return (head + tail) / M_PI;
}

double resolvent_difference(double q, double x, double alpha, const QuadratureSpec& spec) {
    check_domain(q, alpha);
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    const Quadrature quad{spec};
    const double knee = std::pow(q, 1.0 / alpha);

    const double z0 = cosine_zero_at_least(ax, std::max(std::pow(8.0 * q, 1.0 / alpha), 1e-8));
    auto f = [&](double l) {
        // 1 - cos(u) evaluated stably for small u
        const double s = std::sin(0.5 * ax * l);
        return 2.0 * s * s / (q + std::pow(l, alpha));
    };
    const double head = quad.panels(f, z0, std::min(knee, 1.0 / ax));
    const double tail_mean = plain_tail(z0, q, alpha);
    const double tail_osc = oscillatory_tail(z0, ax, q, alpha, quad);
    return (head + tail_mean - tail_osc) / M_PI;
}

double h_times_via_resolvent(double x, double alpha, const QuadratureSpec& spec) {
    if (x == 0.0) return 0.0;
    // geometric q-ladder; fine enough that the fitted power-law model
    // h - A q^theta leaves a sub-1e-4 relative residual even at alpha = 2
    const double q1 = 1e-4, q2 = 1e-5, q3 = 1e-6;
    const double d1 = resolvent_difference(q1, x, alpha, spec);
    const double d2 = resolvent_difference(q2, x, alpha, spec);
    const double d3 = resolvent_difference(q3, x, alpha, spec);
    const double inc1 = d2 - d1;
    const double inc2 = d3 - d2;
    if (!(inc1 > 0.0) || !(inc2 > 0.0) || !(inc2 < inc1))
        throw ExtrapolationError("h_times extrapolation: q-ladder is not Cauchy (x=" +
                                 std::to_string(x) + ", alpha=" + std::to_string(alpha) + ")");
    const double s = inc2 / inc1;
    return d3 + inc2 * s / (1.0 - s);
}

CTimesResult extract_c_times(double alpha, const QuadratureSpec& spec, double spread_tol) {
    CTimesResult out;
    out.xs = {0.5, 1.0, 2.0, 4.0};
    std::vector<double> cs;
    for (double x : out.xs) {
        const double h = h_times_via_resolvent(x, alpha, spec);
        out.h_values.push_back(h);
        cs.push_back(std::pow(x, alpha - 1.0) / h);
    }
    double mean = 0.0;
    for (double c : cs) mean += c;
    mean /= static_cast<double>(cs.size());
    double var = 0.0;
    for (double c : cs) var += (c - mean) * (c - mean);
    var /= static_cast<double>(cs.size() - 1);
    out.c_times = mean;
    out.rel_spread = std::sqrt(var) / mean;

    // least-squares slope of log h against log x
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto m = static_cast<double>(out.xs.size());
    for (std::size_t i = 0; i < out.xs.size(); ++i) {
        const double lx = std::log(out.xs[i]);
        const double ly = std::log(out.h_values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

    if (out.rel_spread > spread_tol) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "extract_c_times: x-dependence beyond tolerance (spread %.3g > %.3g)",
                      out.rel_spread, spread_tol);
        throw ExtrapolationError(buf);
    }
    return out;
}

}  // namespace levycond
