#include "tdesign/povm_sim.hpp"

#include "tdesign/gf.hpp"

#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numeric>

using namespace tdesign;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

PureState mod_phase_state(std::uint64_t n, const std::vector<std::uint32_t>& d) {
    // |psi_g> for the mod-N polynomial g given by d (constant term first)
    PureState s;
    s.amplitudes.resize(Eigen::Index(n));
    for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = d.size(); i-- > 0;) acc = (acc * j + d[i]) % n;
        s.amplitudes(Eigen::Index(j)) =
            std::polar(1.0 / std::sqrt(double(n)), 2.0 * kPi * double(acc) / double(n));
    }
    return s;
}

} // namespace

TEST_CASE("stage one keeps basis states and follows the level weights") {
    const DesignEnsemble e = DesignEnsemble::main(8, 2);
    const TwoStageSampler sampler(e);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const StageFResult res = sampler.stage_f(PureState::basis(8, 3), rng);
        REQUIRE(res.coefficients.size() == 2);
        // diagonal POVM: |3> collapses to |3> up to the sign of the level node
        for (Eigen::Index j = 0; j < 8; ++j) {
            if (j == 3)
                CHECK(std::abs(std::abs(res.collapsed.amplitudes(j)) - 1.0) < 1e-12);
            else
                CHECK(std::abs(res.collapsed.amplitudes(j)) < 1e-15);
        }
    }
    // exact c_0 conditional for the basis state: weights of the level of c0 ^ m(3)
    const auto pdf = sampler.stage_f_pdf(PureState::basis(8, 3), {0});
    // with c_1 = 0, f_c(3) = c0: the level amplitudes squared are x_l^2/8
    const QuadratureRule& rule = e.rule();
    std::vector<double> expected(8);
    std::size_t block = 0;
    std::uint64_t cum = 0;
    for (std::uint64_t v = 0; v < 8; ++v) {
        while (v >= cum + rule.units[block]) {
            cum += rule.units[block];
            ++block;
        }
        expected[std::size_t(v)] = rule.nodes[block] * rule.nodes[block] / 8.0;
    }
    for (std::size_t v = 0; v < 8; ++v)
        CHECK(pdf[v] == doctest::Approx(expected[v]).epsilon(1e-12));
}

TEST_CASE("stage-one operators sum to a POVM") {
    // sum over c0 (fixed high coefficients) of a^2 equals one per coordinate
    const DesignEnsemble e = DesignEnsemble::main(4, 2);
    const TwoStageSampler sampler(e);
    for (std::uint32_t c1 : {0u, 1u, 2u, 3u}) {
        PureState probe = PureState::uniform(4);
        const auto pdf = sampler.stage_f_pdf(probe, {c1});
        CHECK(std::accumulate(pdf.begin(), pdf.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("stage two recovers the linear coefficient of a known phase state") {
    const DesignEnsemble e = DesignEnsemble::main(4, 2);
    const TwoStageSampler sampler(e);
    // |psi_g> with d = (2, 3, 1, 0): conditioned on matching free coefficients,
    // the measurement returns d_1 = 3 with probability one
    const std::vector<std::uint32_t> d{2, 3, 1, 0};
    const auto pdf = sampler.stage_g_pdf(mod_phase_state(4, d), d);
    CHECK(pdf[3] == doctest::Approx(1.0).epsilon(1e-12));
    // Fourier vector with trivial g_0: d_1 = l deterministically
    for (std::uint32_t l = 0; l < 4; ++l) {
        const auto fpdf = sampler.stage_g_pdf(mod_phase_state(4, {0, l, 0, 0}), {0, 0, 0, 0});
        CHECK(fpdf[l] == doctest::Approx(1.0).epsilon(1e-12));
    }
    // uniform superposition with trivial phases: point mass at the DC component
    const auto updf = sampler.stage_g_pdf(PureState::uniform(4), {0, 0, 0, 0});
    CHECK(updf[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact two-stage composition equals the direct POVM probabilities") {
    for (auto [n, t] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {4, 2}}) {
        const DesignEnsemble e = DesignEnsemble::main(n, t);
        const TwoStageSampler sampler(e);
        std::vector<PureState> inputs{PureState::basis(Eigen::Index(n), 0),
                                      PureState::uniform(Eigen::Index(n))};
        Rng rng(17);
        inputs.push_back(sample_haar_state(Eigen::Index(n), rng));
        for (const PureState& psi : inputs) {
            const auto direct = sampler.direct_distribution(psi);
            const auto composed = sampler.composed_distribution(psi);
            REQUIRE(direct.size() == composed.size());
            double total = 0.0;
            for (std::size_t i = 0; i < direct.size(); ++i) {
                CHECK(std::abs(direct[i] - composed[i]) < 1e-10);
                total += composed[i];
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("sampled histogram passes a chi-square test against the exact law") {
    const DesignEnsemble e = DesignEnsemble::main(4, 2);
    const TwoStageSampler sampler(e);
    const PureState psi = PureState::basis(4, 0);
    const std::uint64_t n_samples = 200000;
    const auto hist = sampler.sample_histogram(psi, n_samples, 123);
    const auto exact = sampler.direct_distribution(psi);
    REQUIRE(hist.size() == exact.size());
    double chi2 = 0.0;
    std::size_t dof = 0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        total += hist[i];
        const double expect = exact[i] * double(n_samples);
        if (expect < 1e-12) {
            CHECK(hist[i] == 0);
            continue;
        }
        chi2 += (double(hist[i]) - expect) * (double(hist[i]) - expect) / expect;
        ++dof;
    }
    CHECK(total == n_samples);
    boost::math::chi_squared dist(double(dof - 1));
    const double p_value = boost::math::cdf(boost::math::complement(dist, chi2));
    CHECK(p_value > 0.001);
}

TEST_CASE("free-function stages validate the rule") {
    const QuadratureRule raw = gauss_rule(limit_moments(2));
    Rng rng(1);
    CHECK_THROWS_AS(stage_f(PureState::uniform(4), 2, raw, rng), std::invalid_argument);
    const QuadratureRule rounded = round_rule(raw, 4);
    const StageFResult res = stage_f(PureState::uniform(4), 2, rounded, rng);
    CHECK(res.coefficients.size() == 2);
    CHECK(res.collapsed.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto d = stage_g(PureState::uniform(4), 2, rng);
    CHECK(d.size() == 4);
}

TEST_CASE("histograms are reproducible and seed-sensitive") {
    const PureState psi = PureState::uniform(4);
    const auto h1 = sample_povm(psi, 4, 2, 20000, 42);
    const auto h2 = sample_povm(psi, 4, 2, 20000, 42);
    const auto h3 = sample_povm(psi, 4, 2, 20000, 43);
    CHECK(h1 == h2);
    CHECK(h1 != h3);
    CHECK(std::accumulate(h1.begin(), h1.end(), std::uint64_t(0)) == 20000);
}
