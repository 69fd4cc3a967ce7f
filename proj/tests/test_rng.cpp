#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levycond/rng.hpp"

using namespace levycond;

TEST_CASE("same stream reproduces the same sequence") {
    Xoshiro256 a(RngStream{42, 7});
    Xoshiro256 b(RngStream{42, 7});
    for (int i = 0; i < 50; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices differ") {
    Xoshiro256 a(RngStream{42, 7});
    Xoshiro256 b(RngStream{42, 8});
    int same = 0;
    for (int i = 0; i < 50; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("substream derivation is deterministic and distinct") {
    const RngStream base{123, 456};
    CHECK(base.substream(3) == base.substream(3));
    CHECK_FALSE(base.substream(3) == base.substream(4));
    CHECK_FALSE(base.substream(0) == base);
}

TEST_CASE("uniform01 lands in [0,1) with mean near 1/2") {
    Xoshiro256 rng(RngStream{1, 0});
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    const double se = 1.0 / std::sqrt(12.0 * n);
    CHECK(std::abs(sum / n - 0.5) < 4.0 * se);
}

TEST_CASE("uniform_open01 avoids the endpoints") {
    Xoshiro256 rng(RngStream{2, 0});
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform_open01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("exponential is positive with mean near 1") {
    Xoshiro256 rng(RngStream{3, 0});
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = rng.exponential();
        REQUIRE(w > 0.0);
        sum += w;
    }
    CHECK(std::abs(sum / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sign_flip is a fair coin") {
    Xoshiro256 rng(RngStream{4, 0});
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = rng.sign_flip();
        REQUIRE((s == 1.0 || s == -1.0));
        sum += s;
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}
