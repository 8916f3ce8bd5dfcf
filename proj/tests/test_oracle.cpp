#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hyperzero/oracle.hpp"

using namespace hyperzero;

TEST_CASE("brute force: half-integer Bessel zeros") {
    auto zs = brute_force_zeros({Family::F01, 0, 0, 1.5}, true, 0.0, 30.0);
    REQUIRE(zs.size() == 3);
    CHECK(zs[0] == Catch::Approx(2.4674011002723395).epsilon(1e-11));
    CHECK(zs[1] == Catch::Approx(9.869604401089358).epsilon(1e-11));
    CHECK(zs[2] == Catch::Approx(22.206609902451056).epsilon(1e-11));
}

TEST_CASE("brute force: Chebyshev roots of 2F1(-4,4;1/2;x)") {
    auto zs = brute_force_zeros({Family::F21, -4, 4, 0.5}, false, 0.0, 1.0);
    REQUIRE(zs.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        double s = std::sin((2 * k - 1) * M_PI / 16.0);
        CHECK(zs[k - 1] == Catch::Approx(s * s).epsilon(1e-11));
    }
}

TEST_CASE("brute force: Laguerre quadratic") {
    auto zs = brute_force_zeros({Family::F11, -2, 0, 1.0}, false, 0.0, 10.0);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0] == Catch::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(zs[1] == Catch::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("refinement stability: doubling the grid keeps the count") {
    for (int base : {5000, 10000, 20000}) {
        OracleConfig cfg;
        cfg.grid_points = base;
        auto zs = brute_force_zeros({Family::F11, -20, 0, 0.7}, false, 0.0, 90.0, cfg);
        CHECK(zs.size() == 20);
    }
}

TEST_CASE("every returned zero brackets a sign change at bisection width") {
    OracleConfig cfg;
    FunctionSpec s{Family::F11, -12, 0, 1.4};
    auto zs = brute_force_zeros(s, false, 0.0, 60.0, cfg);
    REQUIRE(zs.size() == 12);
    for (double z : zs) {
        double w = 4.0 * cfg.bisection_tol * std::max(1.0, std::abs(z));
        CHECK(eval_stable(s, z - w).value * eval_stable(s, z + w).value < 0.0);
    }
}

TEST_CASE("isolated zeros") {
    // all-positive series: none
    CHECK_FALSE(isolated_zero({Family::F11, 0.5, 0, 3.0}, false, 0.0, 40.0).has_value());
    // a < 0 gives one sign change
    auto z1 = isolated_zero({Family::F11, -0.5, 0, 3.0}, false, 0.0, 40.0);
    REQUIRE(z1.has_value());
    CHECK(*z1 == Catch::Approx(4.1525777758946248).epsilon(1e-11));
    // 2F1(-1,5;2;x) = 1 - 2.5 x
    auto z2 = isolated_zero({Family::F21, -1, 5, 2.0}, false, 0.0, 1.0);
    REQUIRE(z2.has_value());
    CHECK(*z2 == Catch::Approx(0.4).epsilon(1e-12));
    // several zeros contradict the verdict loudly
    CHECK_THROWS_AS(isolated_zero({Family::F11, -2, 0, 1.0}, false, 0.0, 10.0),
                    MultipleZerosFound);
}
