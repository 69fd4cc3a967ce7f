#include "levycond/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace levycond {

std::vector<std::size_t> TestFunctional::marker_indices(std::size_t n_steps) const {
    std::vector<std::size_t> idx;
    idx.reserve(fractions.size());
    for (double frac : fractions) {
        if (!(frac > 0.0 && frac <= 1.0))
            throw std::invalid_argument("TestFunctional: fractions must lie in (0,1]");
        auto k = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n_steps)));
        k = std::max<std::size_t>(1, std::min(k, n_steps));
        if (!idx.empty() && k <= idx.back())
            throw std::invalid_argument("TestFunctional: grid too coarse to separate sample times");
        idx.push_back(k);
    }
    return idx;
}

TestFunctional constant_one() {
    return TestFunctional{"one", {}, [](std::span<const double>) { return 1.0; }};
}

TestFunctional endpoint_functional(std::string name, std::function<double(double)> f) {
    return TestFunctional{std::move(name),
                          {1.0},
                          [g = std::move(f)](std::span<const double> m) { return g(m[0]); }};
}

std::vector<TestFunctional> canonical_suite() {
    std::vector<TestFunctional> suite;
    suite.push_back(TestFunctional{
        "bump_mid", {0.5}, [](std::span<const double> m) { return std::exp(-m[0] * m[0]); }});
    suite.push_back(TestFunctional{"bump_pair",
                                   {0.375, 0.75},
                                   [](std::span<const double> m) {
                                       return std::exp(-(m[0] * m[0] + m[1] * m[1]));
                                   }});
    suite.push_back(TestFunctional{
        "decay_late", {0.75}, [](std::span<const double> m) { return 1.0 / (1.0 + m[0] * m[0]); }});
    suite.push_back(TestFunctional{"bump_soft",
                                   {0.625},
                                   [](std::span<const double> m) {
                                       return std::exp(-0.5 * m[0] * m[0]);
                                   }});
    suite.push_back(TestFunctional{"bump_triple",
                                   {0.25, 0.5, 0.75},
                                   [](std::span<const double> m) {
                                       return std::exp(
                                           -0.5 * (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]));
                                   }});
    return suite;
}

TestFunctional odd_functional() {
    // sign-sensitive companion to the suite; kept out of the limit
    // experiments because odd expectations vanish only in the entrance limit
    // (they decay like x^(alpha-1), so no fixed x resolves them)
    return TestFunctional{
        "odd_mid", {0.5}, [](std::span<const double> m) { return m[0] * std::exp(-m[0] * m[0]); }};
}

}  // namespace levycond
