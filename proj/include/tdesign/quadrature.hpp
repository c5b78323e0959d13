#pragma once

#include <cstdint>
#include <vector>

namespace tdesign {

// Discrete distribution on the real line matching the Haar amplitude limit
// moments. Canonical node order from gauss_rule is |x| ascending with the
// positive node of each +/- pair first; round_rule preserves the order it is
// given so that level blocks stay aligned with node indices.
struct QuadratureRule {
    unsigned t = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    // set after round_rule: weights[l] == units[l]/denom exactly
    bool rounded = false;
    std::uint64_t denom = 0;
    std::vector<std::uint64_t> units;

    double moment(unsigned j) const;
    std::size_t node_count() const { return nodes.size(); }
};

// m_1..m_2t of the +/-|alpha| limit variable: 0 for odd j, (j/2)! for even j.
std::vector<double> limit_moments(unsigned t);

// Minimal symmetric Gauss rule reproducing the given moments m_1..m_2t
// (odd entries must be zero). Moments are processed in exact rational
// arithmetic through the Chebyshev moment-to-recurrence algorithm; nodes and
// weights come from the Jacobi matrix eigenproblem. Throws
// std::invalid_argument on a sequence whose Hankel form is not positive.
QuadratureRule gauss_rule(const std::vector<double>& moments);

// Round weights to multiples of 1/n by largest-remainder apportionment and
// rescale each kept node so q_l * x_l^2 is preserved. With n >= node count
// every node keeps at least one weight unit; otherwise nodes that receive no
// units are dropped (their q x^2 mass is lost and the caller must compensate).
QuadratureRule round_rule(const QuadratureRule& rule, std::uint64_t n);

} // namespace tdesign
