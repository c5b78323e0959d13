#include "tdesign/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace tdesign;

TEST_CASE("limit moments follow the factorial pattern") {
    const auto m = limit_moments(3);
    CHECK(m[1] == 1.0);  // j=2 -> 1
    CHECK(m[3] == 2.0);  // j=4 -> 2
    CHECK(m[2] == 0.0);  // j=3 -> 0
    CHECK(m[5] == 6.0);
    CHECK_THROWS_AS(limit_moments(0), std::invalid_argument);
}

TEST_CASE("t=1 rule is the symmetric two-point rule") {
    const QuadratureRule r = gauss_rule(limit_moments(1));
    REQUIRE(r.node_count() == 2);
    CHECK(r.nodes[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.nodes[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("t=2 rule matches the split two-point exponential rule") {
    const QuadratureRule r = gauss_rule(limit_moments(2));
    REQUIRE(r.node_count() == 4);
    const double s2 = std::sqrt(2.0);
    CHECK(r.nodes[0] == doctest::Approx(std::sqrt(2.0 - s2)).epsilon(1e-10));
    CHECK(r.nodes[2] == doctest::Approx(std::sqrt(2.0 + s2)).epsilon(1e-10));
    CHECK(r.weights[0] == doctest::Approx((2.0 + s2) / 8.0).epsilon(1e-10));
    CHECK(r.weights[2] == doctest::Approx((2.0 - s2) / 8.0).epsilon(1e-10));
    CHECK(r.moment(2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.moment(4) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r.moment(6) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("rules reproduce all limit moments for t up to 6") {
    for (unsigned t = 1; t <= 6; ++t) {
        const auto m = limit_moments(t);
        const QuadratureRule r = gauss_rule(m);
        double wsum = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
        for (unsigned j = 1; j <= 2 * t; ++j) {
            CAPTURE(t);
            CAPTURE(j);
            CHECK(std::abs(r.moment(j) - m[j - 1]) <= 1e-9);
        }
    }
}

TEST_CASE("invalid moment sequences are rejected") {
    // E[Y^2] < E[Y]^2 is impossible: Hankel not positive definite
    CHECK_THROWS_AS(gauss_rule({0.0, 1.0, 0.0, 0.5}), std::invalid_argument);
    // asymmetric sequences are outside the supported class
    CHECK_THROWS_AS(gauss_rule({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule({0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("round_rule leaves exact multiples unchanged") {
    const QuadratureRule r = gauss_rule(limit_moments(1));
    const QuadratureRule rounded = round_rule(r, 4);
    REQUIRE(rounded.node_count() == 2);
    CHECK(rounded.units == std::vector<std::uint64_t>{2, 2});
    CHECK(rounded.nodes[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rounded.weights[0] == 0.5);
}

TEST_CASE("round_rule apportions largest remainders and preserves q x^2") {
    const QuadratureRule r = gauss_rule(limit_moments(2));
    const QuadratureRule rounded = round_rule(r, 8);
    REQUIRE(rounded.node_count() == 4);
    CHECK(rounded.units == std::vector<std::uint64_t>{3, 3, 1, 1});
    CHECK(std::accumulate(rounded.units.begin(), rounded.units.end(), std::uint64_t(0)) == 8);
    for (std::size_t l = 0; l < 4; ++l) {
        const double before = r.weights[l] * r.nodes[l] * r.nodes[l];
        const double after = rounded.weights[l] * rounded.nodes[l] * rounded.nodes[l];
        CHECK(after == doctest::Approx(before).epsilon(1e-15));
    }
    CHECK(rounded.moment(2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rounding error shrinks linearly in 1/N for low orders") {
    for (unsigned t = 1; t <= 3; ++t) {
        const auto m = limit_moments(t);
        const QuadratureRule r = gauss_rule(m);
        double prev = -1.0;
        double dev16 = 0.0, dev1024 = 0.0;
        for (std::uint64_t n : {16ull, 64ull, 256ull, 1024ull}) {
            const QuadratureRule rd = round_rule(r, n);
            double dev = 0.0;
            for (unsigned j = 2; j <= 2 * t; j += 2)
                dev = std::max(dev, std::abs(rd.moment(j) - m[j - 1]));
            CAPTURE(t);
            CAPTURE(n);
            if (prev >= 0.0) CHECK(dev <= prev + 1e-15);
            prev = dev;
            if (n == 16) dev16 = dev;
            if (n == 1024) dev1024 = dev;
        }
        if (dev16 > 0.0) CHECK(dev1024 <= dev16 / 32.0);
    }
}

TEST_CASE("every node keeps at least one unit when N allows it") {
    // t=6 has an outer node with weight ~2.7e-4: far below 1/N at these sizes
    const QuadratureRule r = gauss_rule(limit_moments(6));
    REQUIRE(r.node_count() == 8);
    for (std::uint64_t n : {16ull, 64ull, 1024ull}) {
        const QuadratureRule rd = round_rule(r, n);
        CHECK(rd.node_count() == 8);
        for (std::uint64_t u : rd.units) CHECK(u >= 1);
        CHECK(std::accumulate(rd.units.begin(), rd.units.end(), std::uint64_t(0)) == n);
        CHECK(rd.moment(2) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("oversubscribed rounding drops nodes but keeps the kept mass") {
    // six nodes cannot all hold a 1/4 unit: the t=4 rule at N=4 drops the tail
    const QuadratureRule r = gauss_rule(limit_moments(4));
    REQUIRE(r.node_count() == 6);
    const QuadratureRule rd = round_rule(r, 4);
    CHECK(rd.node_count() <= 4);
    CHECK(std::accumulate(rd.units.begin(), rd.units.end(), std::uint64_t(0)) == 4);
    // q x^2 preserved per kept node, so the kept second moment is the kept mass
    double kept = 0.0;
    for (std::size_t l = 0; l < rd.node_count(); ++l)
        kept += rd.weights[l] * rd.nodes[l] * rd.nodes[l];
    CHECK(kept < 1.0);
    CHECK(kept > 0.9);
}
