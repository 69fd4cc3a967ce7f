#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "levycond/transforms.hpp"

using namespace levycond;

namespace {

// test-local fixed-panel Simpson rule, independent of the library quadrature
double simpson(const std::function<double(double)>& f, double a, double b, int panels = 2000) {
    const double h = (b - a) / (2 * panels);
    double sum = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// test-local Brownian meander endpoints by brute-force conditioned random
// walk with exact bridge crossings (std <random>, not the library sampler)
std::vector<double> brute_force_meander_endpoints(std::size_t want, double t, double eps,
                                                  double dt, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> step(0.0, std::sqrt(2.0 * dt));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto shift_steps = static_cast<std::size_t>(std::llround(eps / dt));
    const auto total = shift_steps + static_cast<std::size_t>(std::llround(t / dt));
    std::vector<double> out;
    while (out.size() < want) {
        double x = 0.0;
        bool ok = true;
        for (std::size_t k = 1; k <= total; ++k) {
            const double next = x + step(gen);
            if (k > shift_steps &&
                (next < 0.0 || unif(gen) < std::exp(-x * next / dt))) {
                ok = false;
                break;
            }
            if (k == shift_steps && next < 0.0) ok = false;
            if (!ok) break;
            x = next;
        }
        if (ok) out.push_back(x);
    }
    return out;
}

const StableParams kBrownian = StableParams::make_symmetric(2.0);
const StableParams kStable15 = StableParams::make_symmetric(1.5);

}  // namespace

TEST_CASE("h_up power form") {
    CHECK(h_up(3.0, kBrownian) == doctest::Approx(3.0));  // h(x) = x for Brownian motion
    CHECK(h_up(0.0, kStable15) == 0.0);
    CHECK(h_up(4.0, kStable15) == doctest::Approx(2.8284271247461903));  // 4^(3/4)
    CHECK(h_up(4.0, StableParams::make(1.5, 0.4)) == doctest::Approx(std::pow(4.0, 0.9)));
    CHECK_THROWS(h_up(-1.0, kStable15));
}

TEST_CASE("h_times power form") {
    CHECK(h_times(-3.0, kBrownian) == doctest::Approx(3.0));  // h(x) = |x|
    CHECK(h_times(0.0, kStable15) == 0.0);
    CHECK(h_times(4.0, kStable15) == doctest::Approx(2.0));
}

TEST_CASE("avoid-origin conditioning rejects unusable laws") {
    CHECK_THROWS(HKind::avoid_origin().validate(StableParams::make_symmetric(0.9)));
    CHECK_THROWS(HKind::avoid_origin().validate(StableParams::make(1.5, 0.4)));
    CHECK_NOTHROW(HKind::avoid_origin().validate(kStable15));
    CHECK_NOTHROW(HKind::stay_positive().validate(StableParams::make(1.5, 0.4)));
}

TEST_CASE("martingale identity: unit functional reproduces h") {
    const TestFunctional one = constant_one();
    SUBCASE("brownian, stay positive") {
        const GridSpec grid = GridSpec::from_dt(1.0, 1.0 / 512.0);
        const MCEstimate est = expectation_htransform(1.0, one, 1.0, HKind::stay_positive(),
                                                      kBrownian, grid, 50000, RngStream{300, 0});
        CHECK(std::abs(est.mean - 1.0) <= 3.0 * est.std_error);
    }
    SUBCASE("alpha=1.5, stay positive, asymmetric") {
        const GridSpec grid = GridSpec::from_dt(0.5, 1e-3);
        const MCEstimate est =
            expectation_htransform(0.5, one, 0.5, HKind::stay_positive(),
                                   StableParams::make(1.5, 0.4), grid, 50000, RngStream{300, 1});
        CHECK(std::abs(est.mean - 1.0) <= 3.0 * est.std_error);
    }
    SUBCASE("alpha=1.5, avoid origin") {
        const GridSpec grid = GridSpec::from_dt(0.5, 1e-3);
        const MCEstimate est = expectation_htransform(1.0, one, 0.5, HKind::avoid_origin(),
                                                      kStable15, grid, 50000, RngStream{300, 2});
        CHECK(std::abs(est.mean - 1.0) <= 3.0 * est.std_error);
    }
}

TEST_CASE("transform expectation matches the Bessel(3) transition oracle") {
    // P_up_1[f(X_1)] for Brownian motion against quadrature of the exact
    // transition density
    auto f = [](double y) { return std::exp(-y * y); };
    const double oracle = simpson([&](double y) { return f(y) * bessel3_transition_density(1.0, y, 1.0); },
                                  0.0, 12.0);
    const TestFunctional z = endpoint_functional("bump", f);
    const GridSpec grid = GridSpec::from_dt(1.0, 1.0 / 1024.0);
    const MCEstimate est = expectation_htransform(1.0, z, 1.0, HKind::stay_positive(), kBrownian,
                                                  grid, 100000, RngStream{301, 0}, 4);
    INFO("oracle=", oracle, " estimate=", est.mean);
    CHECK(std::abs(est.mean - oracle) <= 3.0 * est.std_error);
}

TEST_CASE("transform consistency across horizons (Markov property)") {
    // an F_s functional evaluated under horizons s and t > s must agree
    const TestFunctional z_s{"bump", {0.5}, [](std::span<const double> m) {
                                 return std::exp(-m[0] * m[0]);
                             }};
    const TestFunctional z_t{"bump", {0.25}, [](std::span<const double> m) {
                                 return std::exp(-m[0] * m[0]);
                             }};
    const GridSpec grid_s = GridSpec::from_dt(0.5, 1e-3);
    const GridSpec grid_t = GridSpec::from_dt(1.0, 1e-3);
    const MCEstimate at_s = expectation_htransform(1.0, z_s, 0.5, HKind::stay_positive(),
                                                   kStable15, grid_s, 100000, RngStream{302, 0});
    const MCEstimate at_t = expectation_htransform(1.0, z_t, 1.0, HKind::stay_positive(),
                                                   kStable15, grid_t, 100000, RngStream{302, 1});
    CHECK(std::abs(at_s.mean - at_t.mean) <= 3.0 * combined_se(at_s, at_t));
}

TEST_CASE("phi matches the closed form for Brownian motion") {
    const GridSpec grid = GridSpec::from_dt(1.0, 1.0 / 1024.0);
    const MCEstimate est = phi(1.0, 1.0, HKind::stay_positive(), kBrownian, grid, 100000,
                               RngStream{303, 0}, 4);
    const double target = 0.5204998778130465;  // erf(1/2)/1
    CHECK(std::abs(est.mean - target) <= 3.0 * est.std_error);
}

TEST_CASE("phi is positive and vanishes at infinity") {
    const GridSpec grid = GridSpec::from_dt(1.0, 2e-3);
    const MCEstimate near = phi(1.0, 1.0, HKind::stay_positive(), kStable15, grid, 50000,
                                RngStream{304, 0});
    const MCEstimate far = phi(8.0, 1.0, HKind::stay_positive(), kStable15, grid, 50000,
                               RngStream{304, 1});
    CHECK(near.mean > 0.0);
    CHECK(far.mean + 3.0 * far.std_error < 0.5 * (near.mean - 3.0 * near.std_error));
}

TEST_CASE("phi is continuous in x") {
    const GridSpec grid = GridSpec::from_dt(1.0, 2e-3);
    const MCEstimate a = phi(1.0, 1.0, HKind::avoid_origin(), kStable15, grid, 50000,
                             RngStream{305, 0});
    const MCEstimate b = phi(1.05, 1.0, HKind::avoid_origin(), kStable15, grid, 50000,
                             RngStream{305, 1});
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * combined_se(a, b) + 0.05 * a.mean);
}

TEST_CASE("entrance approximation is exactly normalized on constants") {
    const TestFunctional c{"const", {}, [](std::span<const double>) { return 0.7; }};
    const GridSpec grid = GridSpec::from_dt(0.5, 2e-3);
    const MCEstimate est = entrance_approximation(0.05, c, 0.5, HKind::stay_positive(), kStable15,
                                                  grid, 20000, RngStream{306, 0});
    CHECK(est.mean == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("entrance approximation stabilizes as x decreases") {
    const TestFunctional z{"bump", {0.5}, [](std::span<const double> m) {
                               return std::exp(-m[0] * m[0]);
                           }};
    const GridSpec grid = GridSpec::from_dt(1.0, 1e-3);
    const MCEstimate coarse = entrance_approximation(0.04, z, 1.0, HKind::stay_positive(),
                                                     kBrownian, grid, 100000, RngStream{307, 0});
    const MCEstimate fine = entrance_approximation(0.02, z, 1.0, HKind::stay_positive(),
                                                   kBrownian, grid, 100000, RngStream{307, 1});
    CHECK(std::abs(coarse.mean - fine.mean) <= 3.0 * combined_se(coarse, fine));
}

TEST_CASE("entrance endpoint mean matches the Bessel(3) mean") {
    const GridSpec grid = GridSpec::from_dt(1.0, 1e-3);
    const WeightedSamples ws = entrance_endpoint_samples(0.04, 1.0, HKind::stay_positive(),
                                                         kBrownian, grid, 100000,
                                                         RngStream{308, 0}, 4);
    WeightedAccumulator acc;
    for (std::size_t i = 0; i < ws.values.size(); ++i) acc.add(ws.weights[i], ws.values[i]);
    const MCEstimate est = acc.estimate_ratio();
    CHECK(bessel3_mean(1.0) == doctest::Approx(2.2567583341910251));
    CHECK(std::abs(est.mean - bessel3_mean(1.0)) <= 3.0 * est.std_error);
    CHECK(ws.ess >= 100.0);
}

TEST_CASE("meander estimates are exactly 1 on the unit functional") {
    const TestFunctional one = constant_one();
    const GridSpec grid = GridSpec::from_dt(0.5, 2e-3);
    const MCEstimate ratio = meander_estimate(0.5, one, HKind::stay_positive(),
                                              WeightedRatio{0.05}, kStable15, grid, 20000,
                                              RngStream{309, 0});
    CHECK(ratio.mean == doctest::Approx(1.0).epsilon(1e-12));
    const MCEstimate rej = meander_estimate(0.5, one, HKind::stay_positive(), Rejection{0.05},
                                            kStable15, grid, 20000, RngStream{309, 1});
    CHECK(rej.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rej.ess > 0.0);
}

TEST_CASE("brownian meander endpoint follows the Rayleigh law") {
    // epsilon = 0.005 keeps the finite-shift systematic well under the KS
    // resolution at this sample size
    const double t = 1.0;
    const GridSpec grid = GridSpec::from_dt(t, 1e-3);
    const auto endpoints = meander_endpoint_samples(t, HKind::stay_positive(), Rejection{0.005},
                                                    kBrownian, grid, 200000, RngStream{310, 0}, 4);
    CHECK(endpoints.size() > 1500);
    const KsReport ks = ks_test(endpoints, [&](double y) { return rayleigh_meander_cdf(y, t); });
    INFO("D=", ks.d_stat, " p=", ks.p_value, " n=", endpoints.size());
    CHECK(ks.passes(0.01));
}

TEST_CASE("library meander agrees with a brute-force conditioned walk") {
    const double t = 1.0, eps = 0.02, dt = 2e-3;
    const GridSpec grid = GridSpec::from_dt(t, dt);
    const auto lib = meander_endpoint_samples(t, HKind::stay_positive(), Rejection{eps},
                                              kBrownian, grid, 40000, RngStream{311, 0}, 4);
    const auto brute = brute_force_meander_endpoints(4000, t, eps, dt, 77);
    CHECK(ks_test(lib, brute).passes(0.01));
}

TEST_CASE("rejection and weighted-ratio meanders agree") {
    const TestFunctional z{"bump", {0.5}, [](std::span<const double> m) {
                               return std::exp(-m[0] * m[0]);
                           }};
    const GridSpec grid = GridSpec::from_dt(1.0, 1e-3);
    const MCEstimate a = meander_estimate(1.0, z, HKind::stay_positive(), Rejection{0.02},
                                          kStable15, grid, 100000, RngStream{312, 0}, 4);
    const MCEstimate b = meander_estimate(1.0, z, HKind::stay_positive(), WeightedRatio{0.02},
                                          kStable15, grid, 100000, RngStream{312, 1}, 4);
    // finite-(eps, x) systematics allowed on top of the combined noise
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * combined_se(a, b) + 0.02 * std::abs(b.mean));
}

TEST_CASE("avoid-origin meander from a brownian start is the even mixture") {
    const GridSpec grid = GridSpec::from_dt(1.0, 1e-3);
    const auto endpoints = meander_endpoint_samples(1.0, HKind::avoid_origin(),
                                                    WeightedRatio{0.05}, kBrownian, grid, 50000,
                                                    RngStream{313, 0}, 4);
    std::size_t positive = 0;
    for (double v : endpoints)
        if (v > 0.0) ++positive;
    const double p = static_cast<double>(positive) / static_cast<double>(endpoints.size());
    const double se = std::sqrt(0.25 / static_cast<double>(endpoints.size()));
    CHECK(std::abs(p - 0.5) <= 3.0 * se);
}

TEST_CASE("symmetrize flips signs but not magnitudes") {
    std::vector<double> values(20000, 1.0);
    symmetrize_signs(values, RngStream{314, 0});
    double sum = 0.0;
    for (double v : values) {
        REQUIRE(std::abs(v) == 1.0);
        sum += v;
    }
    CHECK(std::abs(sum) / values.size() <= 3.0 / std::sqrt(static_cast<double>(values.size())));
}

TEST_CASE("bessel3 oracle self-checks") {
    const double t = 0.8;
    SUBCASE("density integrates to one") {
        const double total = simpson([&](double y) { return bessel3_density(y, t); }, 0.0,
                                     30.0 * std::sqrt(t), 4000);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("mode at sqrt(4t)") {
        const double mode = bessel3_mode(t);
        CHECK(bessel3_density(mode, t) > bessel3_density(mode - 0.01, t));
        CHECK(bessel3_density(mode, t) > bessel3_density(mode + 0.01, t));
    }
    SUBCASE("mean by quadrature") {
        const double mean = simpson([&](double y) { return y * bessel3_density(y, t); }, 0.0,
                                    30.0 * std::sqrt(t), 4000);
        CHECK(mean == doctest::Approx(bessel3_mean(t)).epsilon(1e-8));
    }
    SUBCASE("cdf differentiates to the density") {
        const double y = 1.3, h = 1e-5;
        const double deriv = (bessel3_cdf(y + h, t) - bessel3_cdf(y - h, t)) / (2.0 * h);
        CHECK(deriv == doctest::Approx(bessel3_density(y, t)).epsilon(1e-6));
    }
    SUBCASE("transition density is a probability density in y") {
        const double total = simpson(
            [&](double y) { return bessel3_transition_density(0.7, y, t); }, 0.0, 40.0, 4000);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("rayleigh median") {
        CHECK(rayleigh_meander_cdf(rayleigh_meander_median(t), t) == doctest::Approx(0.5));
        CHECK(rayleigh_meander_median(1.0) == doctest::Approx(std::sqrt(4.0 * std::log(2.0))));
    }
}

TEST_CASE("estimators reject boundary start points") {
    const TestFunctional one = constant_one();
    const GridSpec grid = GridSpec::from_dt(0.5, 1e-2);
    CHECK_THROWS(expectation_htransform(0.0, one, 0.5, HKind::stay_positive(), kStable15, grid,
                                        100, RngStream{315, 0}));
    CHECK_THROWS(expectation_htransform(0.0, one, 0.5, HKind::avoid_origin(), kStable15, grid,
                                        100, RngStream{315, 1}));
}

TEST_CASE("weighted estimators refuse on tiny effective sample size") {
    const TestFunctional one = constant_one();
    const GridSpec grid = GridSpec::from_dt(1.0, 1e-2);
    CHECK_THROWS_AS(meander_estimate(1.0, one, HKind::stay_positive(), WeightedRatio{0.001},
                                     kBrownian, grid, 300, RngStream{316, 0}),
                    EssTooLowError);
}
