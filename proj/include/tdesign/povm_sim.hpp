#pragma once

#include "tdesign/ensemble.hpp"
#include "tdesign/random.hpp"

#include <cstdint>
#include <vector>

namespace tdesign {

struct StageFResult {
    std::vector<std::uint32_t> coefficients; // c_0 .. c_{t-1}, constant term first
    PureState collapsed;
};

// Simulation of the two-stage implementation of the design POVM at the
// probability level: stage one measures the diagonal magnitude POVM via the
// ancilla-shift procedure, stage two the phase projector in a shifted Fourier
// basis. Outcome indices match DesignEnsemble::element of the main variant.
class TwoStageSampler {
public:
    explicit TwoStageSampler(const DesignEnsemble& main_ensemble);
    TwoStageSampler(std::uint64_t n, unsigned t, const QuadratureRule& rounded_rule);

    std::uint64_t outcome_count() const { return size_; }
    std::uint64_t f_count() const { return f_count_; }
    std::uint64_t g_count() const { return g_count_; }

    // exact probabilities <psi|E_{f,g}|psi> from the ensemble elements
    std::vector<double> direct_distribution(const PureState& psi) const;
    // exact stage-1 x stage-2 composition, no sampling
    std::vector<double> composed_distribution(const PureState& psi) const;

    StageFResult stage_f(const PureState& psi, Rng& rng) const;
    std::vector<std::uint32_t> stage_g(const PureState& psi, Rng& rng) const;

    // exact conditional laws of the sampled coefficients, for validation:
    // P(c_0 | c_1..c_{t-1}) and P(d_1 | d_0, d_2..d_{2t-1}) (slot 1 ignored)
    std::vector<double> stage_f_pdf(const PureState& psi,
                                    const std::vector<std::uint32_t>& high_coeffs) const;
    std::vector<double> stage_g_pdf(const PureState& psi,
                                    std::vector<std::uint32_t> d) const;

    std::uint64_t sample_outcome(const PureState& psi, Rng& rng) const;
    // deterministic given the seed, trials run on independent sub-seeded streams
    std::vector<std::uint64_t> sample_histogram(const PureState& psi, std::uint64_t count,
                                                std::uint64_t seed) const;

private:
    void init(std::uint64_t n, unsigned t, const QuadratureRule& rounded_rule);

    std::uint64_t n_ = 0;
    unsigned t_ = 0;
    std::uint64_t size_ = 0, f_count_ = 0, g_count_ = 0;
    std::vector<double> level_amp_;            // signed node / sqrt(N)
    std::vector<std::uint32_t> level_of_value_;
    std::vector<Complex> roots_;               // e^{2 pi i v / N}
    unsigned field_degree_ = 0;

    double stage1_conditional(const PureState& psi, const std::vector<std::uint32_t>& high_coeffs,
                              std::vector<double>& per_c0) const;
    void collapse(const PureState& psi, const std::vector<std::uint32_t>& coeffs,
                  PureState& out) const;
    std::uint32_t f_value(const std::vector<std::uint32_t>& coeffs, std::uint32_t x) const;
    std::uint32_t g_value(const std::vector<std::uint32_t>& coeffs, std::uint32_t x) const;
};

// Free-function forms of the two stages (spec surface); each call builds the
// context from the rule, so hot loops should use TwoStageSampler directly.
StageFResult stage_f(const PureState& psi, unsigned t, const QuadratureRule& rounded_rule,
                     Rng& rng);
std::vector<std::uint32_t> stage_g(const PureState& psi, unsigned t, Rng& rng);

std::vector<std::uint64_t> sample_povm(const PureState& psi, std::uint64_t n, unsigned t,
                                       std::uint64_t count, std::uint64_t seed);

} // namespace tdesign
