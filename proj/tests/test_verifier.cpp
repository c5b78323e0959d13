#include "tdesign/verifier.hpp"

#include "tdesign/parallel.hpp"

#include <doctest.h>

#include <cmath>

using namespace tdesign;

TEST_CASE("frame operator of an exact design is I/M") {
    const DesignEnsemble mub = DesignEnsemble::mub(5);
    const FrameOperator f = frame_operator(mub, 2);
    REQUIRE(f.matrix.rows() == 15);
    const Eigen::MatrixXcd dev = f.matrix - Eigen::MatrixXcd::Identity(15, 15) / 15.0;
    CHECK(dev.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(f.off_support_residual < 1e-12);
    CHECK(approx_epsilon(mub, 2) < 1e-10);
}

TEST_CASE("a single state is maximally far from a 1-design") {
    std::vector<Element> fixed{{1.0, PureState::basis(4, 0)}};
    const DesignEnsemble e = DesignEnsemble::custom(std::move(fixed), 1);
    const FrameOperator f = frame_operator(e, 1);
    CHECK(f.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(approx_epsilon(e, 1) == doctest::Approx(3.0).epsilon(1e-12)); // N - 1
}

TEST_CASE("frame trace equals one for normalized ensembles") {
    for (const DesignEnsemble& e :
         {DesignEnsemble::main(4, 2), DesignEnsemble::mub(3), DesignEnsemble::improved(8, 2, 0.3)}) {
        const FrameOperator f = frame_operator(e, 2);
        CHECK(std::abs(f.matrix.trace().real() - 1.0) < 1e-10);
        CHECK(f.off_support_residual < 1e-12);
    }
}

TEST_CASE("factored and direct frame paths agree to machine precision") {
    for (const DesignEnsemble& e : {DesignEnsemble::main(8, 2), DesignEnsemble::improved(8, 2, 0.3)}) {
        const FrameOperator direct = frame_operator(e, 2, 4096, FramePath::Direct);
        const FrameOperator fact = frame_operator(e, 2, 4096, FramePath::Factored);
        CHECK((direct.matrix - fact.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(frame_operator(DesignEnsemble::mub(3), 2, 4096, FramePath::Factored),
                    std::invalid_argument);
    CHECK_THROWS_AS(frame_operator(DesignEnsemble::main(16, 2), 2, /*dim_budget=*/10),
                    std::invalid_argument);
}

TEST_CASE("monomial expectations match the design constraints") {
    const DesignEnsemble main8 = DesignEnsemble::main(8, 2);
    // |a_1|^2 = 1/N
    CHECK(std::abs(monomial_expectation(main8, {{{1, 1, 1}}}) - Complex(0.125, 0.0)) < 1e-12);
    // unbalanced monomials vanish on the main construction
    CHECK(std::abs(monomial_expectation(main8, {{{1, 1, 0}, {2, 0, 1}}})) < 1e-12);

    const DesignEnsemble mub5 = DesignEnsemble::mub(5);
    CHECK(std::abs(monomial_expectation(mub5, {{{0, 1, 1}, {1, 1, 1}}}) -
                   Complex(1.0 / 30.0, 0.0)) < 1e-10);
    bool warn = false;
    monomial_expectation(mub5, {{{0, 3, 3}}}, &warn);
    CHECK(warn); // degree above the ensemble order is not design-constrained
    warn = false;
    monomial_expectation(mub5, {{{0, 2, 2}}}, &warn);
    CHECK_FALSE(warn);
}

TEST_CASE("main N=8 t=2 conditions; the epsilon has a closed form") {
    const DesignEnsemble e = DesignEnsemble::main(8, 2);
    const VerificationReport rep = check_conditions(e, 2);
    CHECK(rep.complete_enumeration);
    CHECK(rep.max_unbalanced_residual < 1e-12);
    CHECK(rep.max_phase_sensitive_residual < 1e-12);
    CHECK(rep.second_moment_residual < 1e-12);
    CHECK(rep.off_support_residual < 1e-12);
    // Exact value derived from the rounded rule {3,3,1,1}/8 (m4 = 4/3) and the
    // affine magnitude family: E|a_i|^4 = (56/64)(4/3)/64 + (8/64)/64 = 31/1536,
    // so the worst eigenvalue ratio is 36*31/1536 = 0.7265625.
    CHECK(rep.epsilon == doctest::Approx(0.2734375).epsilon(1e-9));
    CHECK(rep.max_balanced_rel_dev == doctest::Approx(0.2734375).epsilon(1e-9));
    // Theorem bound: frame epsilon <= t! * max balanced relative deviation
    CHECK(rep.epsilon <= 2.0 * rep.max_balanced_rel_dev + 1e-12);
}

TEST_CASE("definition equivalence on the exact MUB design") {
    const DesignEnsemble mub5 = DesignEnsemble::mub(5);
    const VerificationReport rep = check_conditions(mub5, 2);
    // all design-constrained monomials match Haar exactly ...
    CHECK(rep.max_balanced_rel_dev < 1e-10);
    CHECK(rep.max_unbalanced_residual < 1e-10);
    // ... and the frame operator is I/M; both directions of the equivalence
    CHECK(rep.epsilon < 1e-10);
    CHECK(rep.theorem_bound_applicable);
    CHECK(rep.epsilon <= 2.0 * rep.max_balanced_rel_dev + 1e-12);
    // global-phase-sensitive monomials are not constrained by the design
    CHECK(rep.max_phase_sensitive_residual > 0.1);
}

TEST_CASE("worker count does not change any reported bit") {
    const DesignEnsemble e = DesignEnsemble::main(4, 2);
    thread_override().store(1);
    const VerificationReport one = check_conditions(e, 2);
    const FrameOperator f_one = frame_operator(e, 2);
    thread_override().store(2);
    const VerificationReport two = check_conditions(e, 2);
    const FrameOperator f_two = frame_operator(e, 2);
    thread_override().store(0);
    CHECK(one.epsilon == two.epsilon);
    CHECK(one.max_balanced_rel_dev == two.max_balanced_rel_dev);
    CHECK(one.max_unbalanced_residual == two.max_unbalanced_residual);
    CHECK((f_one.matrix - f_two.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("budget pressure falls back to a deterministic stratified sweep") {
    const DesignEnsemble e = DesignEnsemble::main(16, 2);
    const VerificationReport rep = check_conditions(e, 2, /*monomial_budget=*/2'000'000'000);
    CHECK_FALSE(rep.complete_enumeration);
    CHECK(rep.monomials_checked > 0);
    CHECK_THROWS_AS(check_conditions(e, 2, /*monomial_budget=*/10), std::invalid_argument);
}

TEST_CASE("exponent patterns enumerate multisets with bounded degree") {
    const auto p42 = exponent_patterns(4, 2);
    CHECK(p42.size() == 15); // empty + 4 singles deg1 + 4 deg2 + 6 pairs
    const auto p82 = exponent_patterns(8, 2);
    CHECK(p82.size() == 45);
}
