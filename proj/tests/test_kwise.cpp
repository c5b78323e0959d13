#include "tdesign/kwise.hpp"

#include <doctest.h>

#include <map>
#include <vector>

using namespace tdesign;

TEST_CASE("exact family basics") {
    const FunctionFamily f21 = FunctionFamily::exact(2, 1);
    CHECK(f21.size() == 2);
    for (std::uint64_t s = 0; s < 2; ++s)
        CHECK(f21.eval(s, 0) == f21.eval(s, 1)); // degree-0 polynomials are constant

    CHECK_THROWS_AS(FunctionFamily::exact(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(f21.eval(5, 0), std::out_of_range);
    CHECK_THROWS_AS(f21.eval(0, 7), std::out_of_range);
}

TEST_CASE("N=4 k=2 family is exactly uniform on point pairs") {
    const FunctionFamily fam = FunctionFamily::exact(4, 2);
    CHECK(fam.size() == 16);
    for (auto [x, y] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {1, 3}}) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, int> tally;
        for (std::uint64_t s = 0; s < fam.size(); ++s) ++tally[{fam.eval(s, x), fam.eval(s, y)}];
        CHECK(tally.size() == 16);
        for (const auto& [pair, count] : tally) CHECK(count == 1);
    }
}

TEST_CASE("member_eval decodes little-endian base-N coefficients") {
    const FunctionFamily fam = FunctionFamily::exact(4, 2);
    for (std::uint64_t x = 0; x < 4; ++x) CHECK(fam.eval(0, x) == 0); // zero polynomial
    // index 5 = 1 + 1*4 -> coefficients (1, 1) -> f(x) = x + 1 over GF(4)
    CHECK(fam.eval(5, 2) == 3);
    CHECK(fam.eval(5, 0) == 1);
    // fixing x, every value appears N^{k-1} times across members
    for (std::uint64_t x = 0; x < 4; ++x) {
        std::map<std::uint64_t, int> tally;
        for (std::uint64_t s = 0; s < fam.size(); ++s) ++tally[fam.eval(s, x)];
        for (const auto& [v, count] : tally) CHECK(count == 4);
    }
    // index <-> coefficient bijection: constant coefficient is the low digit
    for (std::uint64_t s = 0; s < fam.size(); ++s) CHECK(fam.eval(s, 0) == s % 4);
}

TEST_CASE("exact families have zero bias under full enumeration") {
    for (auto [n, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{4, 2}, {8, 2}, {8, 3}}) {
        const FunctionFamily fam = FunctionFamily::exact(n, k);
        CHECK(family_bias(fam, k) == 0.0);
    }
}

TEST_CASE("range-adjusted exact families stay exact") {
    // m < N: top bits of the GF(N) value
    const FunctionFamily down = FunctionFamily::exact_into(8, 2, 2);
    CHECK(down.size() == 64);
    CHECK(family_bias(down, 2) == 0.0);
    // m > N: polynomials over GF(m) on an embedded domain
    const FunctionFamily up = FunctionFamily::exact_into(4, 16, 2);
    CHECK(up.size() == 256);
    CHECK(family_bias(up, 2) == 0.0);
}

TEST_CASE("binary odd-power family is exactly k-wise independent") {
    const FunctionFamily b2 = FunctionFamily::binary(8, 2);
    CHECK(b2.size() == 2 * 8);
    CHECK(family_bias(b2, 2) == 0.0);

    const FunctionFamily b4 = FunctionFamily::binary(16, 4);
    CHECK(b4.size() == 2 * 16 * 16);
    CHECK(family_bias(b4, 4) == 0.0);
}

TEST_CASE("delta family bias stays within its declared delta") {
    const FunctionFamily fam = FunctionFamily::delta_dependent(8, 2, 2, 0.25);
    CHECK(fam.delta() == 0.25);
    CHECK(family_bias(fam, 2) <= 0.25);

    const FunctionFamily fam4 = FunctionFamily::delta_dependent(16, 4, 2, 0.3);
    CHECK(family_bias(fam4, 2) <= 0.3);
}

TEST_CASE("delta family cardinality grows with log N, not N") {
    // frozen measured sizes of the deterministic construction
    const std::uint64_t s4 = FunctionFamily::delta_dependent(1u << 4, 2, 2, 0.25).size();
    const std::uint64_t s8 = FunctionFamily::delta_dependent(1u << 8, 2, 2, 0.25).size();
    const std::uint64_t s12 = FunctionFamily::delta_dependent(1u << 12, 2, 2, 0.25).size();
    CHECK(s4 <= s8);
    CHECK(s8 <= s12);
    // quadratic in log N at fixed delta: 256x more points, bounded size growth
    CHECK(double(s12) / double(s4) <= 27.0);
    CHECK(s12 < (1u << 12)); // sublinear in the domain at these parameters
    // shrinking delta grows the family polynomially in 1/delta
    const std::uint64_t tight = FunctionFamily::delta_dependent(1u << 8, 2, 2, 0.02).size();
    CHECK(tight > s8);
}

TEST_CASE("family_bias spec anchors") {
    // one constant member, k=1, m=2: point mass vs uniform has distance 1/2
    const double one_member =
        family_bias(8, 2, 1, [](std::uint64_t, std::uint64_t) { return 0; }, 1);
    CHECK(one_member == doctest::Approx(0.5).epsilon(1e-12));
    // a single balanced member is 1-wise 0.5-dependent: parity of the point
    const double balanced =
        family_bias(8, 2, 1, [](std::uint64_t, std::uint64_t x) { return x & 1; }, 1);
    CHECK(balanced <= 0.5);
    CHECK_THROWS_AS(family_bias(1u << 20, 2, 1u << 30,
                                [](std::uint64_t, std::uint64_t) { return 0; }, 2),
                    std::invalid_argument);
}

TEST_CASE("irreducible poly enumeration matches the counting formula") {
    CHECK(irreducible_polys_gf2(1).size() == 2);  // x, x+1
    CHECK(irreducible_polys_gf2(2).size() == 1);  // x^2+x+1
    CHECK(irreducible_polys_gf2(3).size() == 2);
    CHECK(irreducible_polys_gf2(4).size() == 3);
    CHECK(irreducible_polys_gf2(5).size() == 6);
    CHECK(irreducible_polys_gf2(6).size() == 9);
    CHECK(irreducible_polys_gf2(7).size() == 18);
    CHECK(irreducible_polys_gf2(8).size() == 30);
}
