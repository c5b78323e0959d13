#pragma once

#include "tdesign/ensemble.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tdesign {

struct DistinctionReport {
    std::uint64_t n = 0;
    unsigned t = 0;
    std::string variant;
    double frobenius = 0.0;       // f = sqrt(sum |entries|^2) of rho1 - rho2
    double l1 = 0.0;              // POVM output distributions, l1 distance
    double s_abs = 0.0;           // E|S| = l1 / N
    double s2 = 0.0;              // E[S^2]
    double s4 = 0.0;              // E[S^4]
    double berger = 0.0;          // E[S^2]^{3/2} / E[S^4]^{1/2}
    std::optional<double> epsilon_hat;
    double delta_eps = 0.0;       // l1 floor is f/3 * (1 - delta_eps)
    double l1_floor = 0.0;
    bool premise_holds = false;   // epsilon_hat < f^4 (reporting convention c = 1)
    std::optional<double> haar_baseline_mean;
    double haar_baseline_stderr = 0.0;
    // The matrix-entry Frobenius definition gives sqrt(2) for orthogonal pure
    // states; the text value 2 would correspond to the squared norm.
    std::string frobenius_note = "frobenius = sqrt(sum |a_kl|^2); orthogonal pure states give sqrt(2)";
};

// Outcome probabilities N p_j <phi_j| rho |phi_j> of the design POVM.
std::vector<double> povm_distribution(const DesignEnsemble& ensemble, const DensityMatrix& rho,
                                      std::uint64_t size_budget = 1u << 22);

// One streamed pass accumulating l1, E[S^2], E[S^4] for S = <phi|rho1-rho2|phi>.
// epsilon_hat, when supplied, fills the epsilon-corrected floor fields.
DistinctionReport distinguish(const DesignEnsemble& ensemble, const DensityMatrix& rho1,
                              const DensityMatrix& rho2,
                              std::optional<double> epsilon_hat = std::nullopt);

// Same report for many pairs sharing a single pass over the ensemble; the
// element stream dominates the cost at size ~N^{3t}, so batching pairs is
// how the slow experiments stay tractable.
std::vector<DistinctionReport> distinguish_many(
    const DesignEnsemble& ensemble,
    const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs,
    std::optional<double> epsilon_hat = std::nullopt);

double berger_bound(double m2, double m4);

struct BaselineResult {
    double mean = 0.0;
    double std_error = 0.0;
    unsigned trials = 0;
};

// Monte-Carlo E over Haar-random orthonormal bases of || M(rho1) - M(rho2) ||_1.
BaselineResult haar_baseline(const DensityMatrix& rho1, const DensityMatrix& rho2,
                             unsigned trials, std::uint64_t seed);

// l1 distance of the MUB-POVM outputs for two states of the same basis;
// analytically 2/(N+1).
double mub_counterexample(std::uint64_t n_prime);

} // namespace tdesign
