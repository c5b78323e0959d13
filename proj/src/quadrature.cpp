#include "tdesign/quadrature.hpp"

#include "tdesign/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tdesign {

double QuadratureRule::moment(unsigned j) const {
    double acc = 0.0;
    for (std::size_t l = 0; l < nodes.size(); ++l) acc += weights[l] * std::pow(nodes[l], double(j));
    return acc;
}

std::vector<double> limit_moments(unsigned t) {
    if (t < 1 || t > 10) throw std::invalid_argument("limit_moments: t must be in [1,10]");
    std::vector<double> m(2 * t);
    for (unsigned j = 1; j <= 2 * t; ++j) {
        if (j % 2 == 1) {
            m[j - 1] = 0.0;
        } else {
            double f = 1.0;
            for (unsigned i = 2; i <= j / 2; ++i) f *= double(i);
            m[j - 1] = f;
        }
    }
    return m;
}

namespace {

// Chebyshev moment-to-recurrence algorithm on exact rationals. Input: raw
// moments mu_0..mu_{2n-1}; output: Jacobi recurrence (a_k, b_k), b_0 = mu_0.
// A nonpositive b_k means the Hankel matrix is not positive definite.
void chebyshev_recurrence(const std::vector<Rational>& mu, unsigned n,
                          std::vector<Rational>& a, std::vector<Rational>& b) {
    if (mu.size() < 2 * n) throw std::logic_error("chebyshev: not enough moments");
    a.assign(n, Rational(0));
    b.assign(n, Rational(0));
    std::vector<Rational> prev(mu.begin(), mu.end()); // nu_{k-1, *}
    std::vector<Rational> prev2(2 * n, Rational(0));  // nu_{k-2, *}
    a[0] = mu[1] / mu[0];
    b[0] = mu[0];
    std::vector<Rational> cur(2 * n, Rational(0));
    for (unsigned k = 1; k < n; ++k) {
        for (unsigned l = k; l <= 2 * n - 1 - k; ++l)
            cur[l] = prev[l + 1] - a[k - 1] * prev[l] - b[k - 1] * prev2[l];
        if (!(cur[k] > 0))
            throw std::invalid_argument("gauss_rule: invalid moment sequence (Hankel matrix not positive definite)");
        a[k] = cur[k + 1] / cur[k] - prev[k] / prev[k - 1];
        b[k] = cur[k] / prev[k - 1];
        prev2 = prev;
        prev = cur;
        std::fill(cur.begin(), cur.end(), Rational(0));
    }
}

} // namespace

QuadratureRule gauss_rule(const std::vector<double>& moments) {
    if (moments.empty() || moments.size() % 2 != 0)
        throw std::invalid_argument("gauss_rule: expected moments m_1..m_2t");
    const unsigned t = unsigned(moments.size() / 2);
    for (unsigned j = 1; j <= 2 * t; j += 2)
        if (moments[j - 1] != 0.0)
            throw std::invalid_argument("gauss_rule: only symmetric sequences (odd moments zero) are supported");
    if (!(moments[1] > 0.0))
        throw std::invalid_argument("gauss_rule: invalid moment sequence (Hankel matrix not positive definite)");

    // Work with Y = X^2: mu_c = m_{2c}. A symmetric 2n-point X-rule needs the
    // Y-rule for mu_0..mu_{2n-1}; for even t the one missing top moment is
    // completed factorial-style, matching the exponential limit measure.
    const unsigned n = (t + 2) / 2;
    std::vector<Rational> mu(2 * n, Rational(0));
    mu[0] = 1;
    for (unsigned c = 1; c <= t; ++c) mu[c] = Rational(moments[2 * c - 1]);
    if (2 * n - 1 > t) mu[t + 1] = mu[t] * Rational(t + 1);

    std::vector<Rational> a, b;
    chebyshev_recurrence(mu, n, a, b);

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (unsigned i = 0; i < n; ++i) {
        jacobi(i, i) = to_double(a[i]);
        if (i + 1 < n) {
            const double off = std::sqrt(to_double(b[i + 1]));
            jacobi(i, i + 1) = off;
            jacobi(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_rule: eigensolver failed");

    std::vector<std::pair<double, double>> y_rule(n); // (node, weight)
    for (unsigned i = 0; i < n; ++i) {
        const double y = es.eigenvalues()(i);
        const double w = to_double(mu[0]) * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        if (y < -1e-12)
            throw std::invalid_argument("gauss_rule: invalid moment sequence (negative support)");
        y_rule[i] = {std::max(y, 0.0), w};
    }
    std::sort(y_rule.begin(), y_rule.end());

    QuadratureRule rule;
    rule.t = t;
    for (const auto& [y, w] : y_rule) {
        const double x = std::sqrt(y);
        rule.nodes.push_back(x);
        rule.weights.push_back(0.5 * w);
        rule.nodes.push_back(-x);
        rule.weights.push_back(0.5 * w);
    }
    return rule;
}

QuadratureRule round_rule(const QuadratureRule& rule, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("round_rule: N must be positive");
    const std::size_t nn = rule.node_count();

    std::vector<double> quota(nn);
    std::vector<std::uint64_t> units(nn);
    std::vector<double> rem(nn);
    bool exact_already = true;
    for (std::size_t l = 0; l < nn; ++l) {
        quota[l] = rule.weights[l] * double(n);
        const double nearest = std::round(quota[l]);
        if (std::abs(quota[l] - nearest) < 1e-9) {
            units[l] = std::uint64_t(nearest);
            rem[l] = 0.0;
        } else {
            units[l] = std::uint64_t(std::floor(quota[l]));
            rem[l] = quota[l] - double(units[l]);
            exact_already = false;
        }
    }

    std::vector<bool> forced(nn, false);
    if (!exact_already || std::accumulate(units.begin(), units.end(), std::uint64_t(0)) != n) {
        if (n >= nn) {
            // every node keeps at least one unit so no q x^2 mass is lost
            for (std::size_t l = 0; l < nn; ++l)
                if (units[l] == 0) {
                    units[l] = 1;
                    forced[l] = true;
                }
        }
        std::uint64_t total = std::accumulate(units.begin(), units.end(), std::uint64_t(0));
        std::vector<std::size_t> order(nn);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&rem](std::size_t i, std::size_t j) { return rem[i] > rem[j]; });
        std::size_t cursor = 0;
        while (total < n) {
            const std::size_t l = order[cursor % nn];
            ++cursor;
            if (forced[l]) continue;
            ++units[l];
            ++total;
        }
        cursor = 0;
        while (total > n) {
            // walk remainders ascending and shave units, never below the floor of one
            const std::size_t l = order[nn - 1 - (cursor % nn)];
            ++cursor;
            if (forced[l] || units[l] <= 1) continue;
            --units[l];
            --total;
        }
    }

    QuadratureRule out;
    out.t = rule.t;
    out.rounded = true;
    out.denom = n;
    for (std::size_t l = 0; l < nn; ++l) {
        if (units[l] == 0) continue; // dropped (only reachable when n < node count)
        const double q_new = double(units[l]) / double(n);
        const double scale = rule.weights[l] / q_new; // q x^2 preserved per kept node
        out.nodes.push_back(rule.nodes[l] * std::sqrt(scale));
        out.weights.push_back(q_new);
        out.units.push_back(units[l]);
    }
    return out;
}

} // namespace tdesign
