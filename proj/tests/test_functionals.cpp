#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levycond/functionals.hpp"

using namespace levycond;

TEST_CASE("marker indices resolve fractions onto the grid") {
    TestFunctional z{"z", {0.25, 0.5, 0.75}, [](std::span<const double>) { return 0.0; }};
    CHECK(z.marker_indices(1000) == std::vector<std::size_t>{250, 500, 750});
    CHECK(z.marker_indices(4) == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("marker indices reject unusable inputs") {
    TestFunctional crowded{"c", {0.10, 0.12}, [](std::span<const double>) { return 0.0; }};
    CHECK_THROWS(crowded.marker_indices(10));  // both fractions land on index 1
    TestFunctional bad{"b", {0.0, 0.5}, [](std::span<const double>) { return 0.0; }};
    CHECK_THROWS(bad.marker_indices(100));
}

TEST_CASE("constant functional needs no marginals") {
    const TestFunctional one = constant_one();
    CHECK(one.marker_indices(100).empty());
    CHECK(one.evaluate({}) == 1.0);
}

TEST_CASE("endpoint functional samples the horizon") {
    const TestFunctional z = endpoint_functional("sq", [](double v) { return v * v; });
    CHECK(z.marker_indices(100) == std::vector<std::size_t>{100});
    const double v = 3.0;
    CHECK(z.evaluate(std::span<const double>(&v, 1)) == 9.0);
}

TEST_CASE("canonical suite shape: bounded, vanishing, at most three marginals") {
    const auto suite = canonical_suite();
    CHECK(suite.size() == 5);
    for (const auto& z : suite) {
        REQUIRE(z.fractions.size() >= 1);
        REQUIRE(z.fractions.size() <= 3);
        std::vector<double> args(z.fractions.size(), 0.3);
        CHECK(std::abs(z.evaluate(args)) <= 1.0);
        std::vector<double> far(z.fractions.size(), 50.0);
        CHECK(std::abs(z.evaluate(far)) < 1e-3);
        std::vector<double> very_far(z.fractions.size(), 5000.0);
        CHECK(std::abs(z.evaluate(very_far)) < 1e-6);
        // suite members are even in each marginal
        std::vector<double> plus(z.fractions.size(), 0.7), minus(z.fractions.size(), -0.7);
        CHECK(z.evaluate(plus) == z.evaluate(minus));
    }
}

TEST_CASE("odd companion functional is sign-sensitive and vanishing") {
    const TestFunctional z = odd_functional();
    const double plus = 0.7, minus = -0.7, far = 50.0;
    CHECK(z.evaluate(std::span<const double>(&plus, 1)) ==
          -z.evaluate(std::span<const double>(&minus, 1)));
    CHECK(std::abs(z.evaluate(std::span<const double>(&far, 1))) < 1e-6);
}
