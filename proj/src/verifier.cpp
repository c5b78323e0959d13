#include "tdesign/verifier.hpp"

#include "tdesign/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdesign {

namespace {

constexpr std::uint64_t kChunk = 4096;

std::vector<std::vector<std::uint32_t>> multiset_basis(std::uint64_t n, unsigned t) {
    std::vector<std::vector<std::uint32_t>> basis;
    std::vector<std::uint32_t> cur(t, 0);
    // lexicographic enumeration of sorted t-tuples
    for (;;) {
        basis.push_back(cur);
        int pos = int(t) - 1;
        while (pos >= 0 && cur[std::size_t(pos)] == n - 1) --pos;
        if (pos < 0) break;
        const std::uint32_t next = cur[std::size_t(pos)] + 1;
        for (unsigned j = unsigned(pos); j < t; ++j) cur[j] = next;
    }
    return basis;
}

// <psi_{i_1..i_t} | phi^{ot t}> = sqrt(d) * alpha_{i_1} ... alpha_{i_t}
void projection_vector(const Eigen::VectorXcd& amps,
                       const std::vector<std::vector<std::uint32_t>>& basis,
                       const std::vector<double>& sqrt_d, Eigen::VectorXcd& out) {
    const Eigen::Index m = Eigen::Index(basis.size());
    for (Eigen::Index i = 0; i < m; ++i) {
        Complex p = amps(Eigen::Index(basis[std::size_t(i)][0]));
        for (std::size_t k = 1; k < basis[std::size_t(i)].size(); ++k)
            p *= amps(Eigen::Index(basis[std::size_t(i)][k]));
        out(i) = p * sqrt_d[std::size_t(i)];
    }
}

// Total weight of the ensemble prefix on an antisymmetric probe vector; for
// tensor-power states this vanishes identically, so any nonzero value flags
// an implementation fault rather than a numerical one.
double antisymmetric_spot_check(const DesignEnsemble& ensemble, unsigned t) {
    if (t < 2 || ensemble.dim() < 2) return 0.0;
    const std::uint64_t probe_count = std::min<std::uint64_t>(ensemble.size(), 2048);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < probe_count; ++i) {
        const Element el = ensemble.element(i);
        // (|01...> - |10...>)/sqrt(2) against phi^{ot t}, trailing slots at 0
        Complex rest(1.0, 0.0);
        for (unsigned k = 2; k < t; ++k) rest *= el.state.amplitudes(0);
        const Complex overlap = (el.state.amplitudes(0) * el.state.amplitudes(1) -
                                 el.state.amplitudes(1) * el.state.amplitudes(0)) *
                                rest / std::sqrt(2.0);
        acc += el.weight * std::norm(overlap);
    }
    return acc;
}

} // namespace

FrameOperator frame_operator(const DesignEnsemble& ensemble, unsigned t,
                             std::uint64_t dim_budget, FramePath path) {
    const std::uint64_t n = ensemble.dim();
    const std::uint64_t m_dim = symmetric_dim(n, t);
    if (m_dim > dim_budget)
        throw std::invalid_argument("frame_operator: symmetric dimension exceeds the budget");
    FrameOperator out;
    out.basis = multiset_basis(n, t);
    const Eigen::Index m = Eigen::Index(out.basis.size());
    std::vector<double> sqrt_d(out.basis.size());
    for (std::size_t i = 0; i < out.basis.size(); ++i)
        sqrt_d[i] = std::sqrt(double(multiset_weight(out.basis[i])));

    const bool factored = (path == FramePath::Factored) ||
                          (path == FramePath::Auto && ensemble.has_product_structure());
    if (factored && !ensemble.has_product_structure())
        throw std::invalid_argument("frame_operator: ensemble has no magnitude/phase split");

    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(m, m);
    auto combine = [](Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { a += b; };

    if (!factored) {
        Eigen::MatrixXcd sum = chunked_reduce<Eigen::MatrixXcd>(
            ensemble.size(), kChunk, zero,
            [&](std::uint64_t begin, std::uint64_t end, Eigen::MatrixXcd& acc) {
                Eigen::VectorXcd v(m);
                for (std::uint64_t i = begin; i < end; ++i) {
                    const Element el = ensemble.element(i);
                    projection_vector(el.state.amplitudes, out.basis, sqrt_d, v);
                    acc.selfadjointView<Eigen::Upper>().rankUpdate(v, el.weight);
                }
            },
            combine);
        out.matrix = sum.selfadjointView<Eigen::Upper>();
    } else {
        const std::uint64_t fc = ensemble.magnitude_count();
        const std::uint64_t gc = ensemble.phase_count();
        Eigen::MatrixXcd mag = chunked_reduce<Eigen::MatrixXcd>(
            fc, 64, zero,
            [&](std::uint64_t begin, std::uint64_t end, Eigen::MatrixXcd& acc) {
                std::vector<double> a;
                double sumsq = 0.0;
                Eigen::VectorXcd c(m);
                for (std::uint64_t fi = begin; fi < end; ++fi) {
                    ensemble.magnitudes(fi, a, sumsq);
                    const double inv = 1.0 / std::sqrt(sumsq);
                    for (Eigen::Index i = 0; i < m; ++i) {
                        double p = sqrt_d[std::size_t(i)];
                        for (std::uint32_t idx : out.basis[std::size_t(i)]) p *= a[idx] * inv;
                        c(i) = Complex(p, 0.0);
                    }
                    acc.selfadjointView<Eigen::Upper>().rankUpdate(c, sumsq);
                }
            },
            combine);
        Eigen::MatrixXcd ph = chunked_reduce<Eigen::MatrixXcd>(
            gc, kChunk, zero,
            [&](std::uint64_t begin, std::uint64_t end, Eigen::MatrixXcd& acc) {
                std::vector<Complex> phases;
                Eigen::VectorXcd u(m);
                for (std::uint64_t gi = begin; gi < end; ++gi) {
                    ensemble.phases(gi, phases);
                    for (Eigen::Index i = 0; i < m; ++i) {
                        Complex p = phases[out.basis[std::size_t(i)][0]];
                        for (std::size_t k = 1; k < out.basis[std::size_t(i)].size(); ++k)
                            p *= phases[out.basis[std::size_t(i)][k]];
                        u(i) = p;
                    }
                    acc.selfadjointView<Eigen::Upper>().rankUpdate(u, 1.0);
                }
            },
            combine);
        mag /= double(fc);
        ph /= double(gc);
        Eigen::MatrixXcd upper = mag.cwiseProduct(ph);
        out.matrix = upper.selfadjointView<Eigen::Upper>();
    }

    out.off_support_residual =
        std::abs(1.0 - out.matrix.trace().real()) + antisymmetric_spot_check(ensemble, t);
    return out;
}

double approx_epsilon(const DesignEnsemble& ensemble, unsigned t,
                      std::uint64_t dim_budget, FramePath path) {
    const FrameOperator f = frame_operator(ensemble, t, dim_budget, path);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.matrix, Eigen::EigenvaluesOnly);
    const double m = double(f.matrix.rows());
    double eps = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        eps = std::max(eps, std::abs(es.eigenvalues()(i) * m - 1.0));
    return eps;
}

Complex monomial_expectation(const DesignEnsemble& ensemble, const Monomial& mono,
                             bool* degree_warning) {
    mono.validate(ensemble.dim());
    if (degree_warning)
        *degree_warning = mono.degree_plain() > ensemble.order() ||
                          mono.degree_conj() > ensemble.order();
    struct Acc {
        Complex v{0.0, 0.0};
    };
    Acc total = chunked_reduce<Acc>(
        ensemble.size(), kChunk, Acc{},
        [&](std::uint64_t begin, std::uint64_t end, Acc& acc) {
            for (std::uint64_t i = begin; i < end; ++i) {
                const Element el = ensemble.element(i);
                Complex p(1.0, 0.0);
                for (const auto& term : mono.terms) {
                    const Complex a = el.state.amplitudes(Eigen::Index(term.index));
                    for (std::uint32_t e = 0; e < term.c; ++e) p *= a;
                    const Complex ac = std::conj(a);
                    for (std::uint32_t e = 0; e < term.d; ++e) p *= ac;
                }
                acc.v += el.weight * p;
            }
        },
        [](Acc& a, const Acc& b) { a.v += b.v; });
    return total.v;
}

std::vector<std::vector<MonomialTerm>> exponent_patterns(std::uint64_t n_coords, unsigned t) {
    std::vector<std::vector<MonomialTerm>> out;
    std::vector<MonomialTerm> cur;
    // patterns in lexicographic coordinate order, exponents >= 1 per entry
    auto rec = [&](auto&& self, std::uint32_t first_coord, unsigned remaining) -> void {
        out.push_back(cur);
        if (remaining == 0) return;
        for (std::uint32_t coord = first_coord; coord < n_coords; ++coord) {
            for (unsigned e = 1; e <= remaining; ++e) {
                cur.push_back({coord, e, 0});
                self(self, coord + 1, remaining - e);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0, t);
    return out;
}

VerificationReport check_conditions(const DesignEnsemble& ensemble, unsigned t,
                                    std::uint64_t monomial_budget, std::uint64_t dim_budget,
                                    bool keep_table) {
    const std::uint64_t n = ensemble.dim();
    VerificationReport rep;
    rep.n = n;
    rep.t = t;
    rep.variant = variant_name(ensemble.variant());

    // choose the coordinate stratum so the sweep fits the budget
    std::uint64_t coords = n;
    std::vector<std::vector<MonomialTerm>> patterns;
    for (;;) {
        patterns = exponent_patterns(coords, t);
        const std::uint64_t pairs = std::uint64_t(patterns.size()) * patterns.size();
        if (pairs <= monomial_budget / std::max<std::uint64_t>(ensemble.size(), 1)) break;
        if (coords <= std::uint64_t(t) + 1)
            throw std::invalid_argument("check_conditions: monomial budget exceeded");
        coords = std::min(coords - 1, std::uint64_t(2 * t + 2));
    }
    rep.complete_enumeration = (coords == n);
    const std::size_t np = patterns.size();
    rep.monomials_checked = std::uint64_t(np) * np - 1;

    using Acc = std::vector<Complex>;
    Acc zero(np * np, Complex(0.0, 0.0));
    Acc sums = chunked_reduce<Acc>(
        ensemble.size(), kChunk, zero,
        [&](std::uint64_t begin, std::uint64_t end, Acc& acc) {
            std::vector<Complex> pattern_val(np);
            for (std::uint64_t i = begin; i < end; ++i) {
                const Element el = ensemble.element(i);
                for (std::size_t p = 0; p < np; ++p) {
                    Complex v(1.0, 0.0);
                    for (const auto& term : patterns[p]) {
                        const Complex a = el.state.amplitudes(Eigen::Index(term.index));
                        for (std::uint32_t e = 0; e < term.c; ++e) v *= a;
                    }
                    pattern_val[p] = v;
                }
                for (std::size_t pc = 0; pc < np; ++pc) {
                    const Complex wc = el.weight * pattern_val[pc];
                    for (std::size_t pd = 0; pd < np; ++pd)
                        acc[pc * np + pd] += wc * std::conj(pattern_val[pd]);
                }
            }
        },
        [](Acc& a, const Acc& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        });

    const double inv_n = 1.0 / double(n);
    for (std::size_t pc = 0; pc < np; ++pc) {
        for (std::size_t pd = 0; pd < np; ++pd) {
            if (pc == 0 && pd == 0) continue;
            const Complex measured = sums[pc * np + pd];
            const bool balanced = pc == pd;
            if (balanced) {
                Monomial mono;
                for (const auto& term : patterns[pc]) mono.terms.push_back({term.index, term.c, term.c});
                const double haar = to_double(haar_expectation(n, mono));
                const double rel = std::abs(measured - Complex(haar, 0.0)) / haar;
                rep.max_balanced_rel_dev = std::max(rep.max_balanced_rel_dev, rel);
                if (patterns[pc].size() == 1 && patterns[pc][0].c == 1)
                    rep.second_moment_residual =
                        std::max(rep.second_moment_residual, std::abs(measured - Complex(inv_n, 0.0)));
                if (keep_table) rep.per_monomial.push_back({mono, measured, haar, rel});
            } else {
                unsigned c_total = 0, d_total = 0;
                for (const auto& term : patterns[pc]) c_total += term.c;
                for (const auto& term : patterns[pd]) d_total += term.c;
                if (c_total == d_total)
                    rep.max_unbalanced_residual = std::max(rep.max_unbalanced_residual, std::abs(measured));
                else
                    rep.max_phase_sensitive_residual =
                        std::max(rep.max_phase_sensitive_residual, std::abs(measured));
                if (keep_table) {
                    Monomial mono;
                    for (const auto& term : patterns[pc]) mono.terms.push_back({term.index, term.c, 0});
                    for (const auto& term : patterns[pd]) {
                        bool found = false;
                        for (auto& existing : mono.terms)
                            if (existing.index == term.index) {
                                existing.d = term.c;
                                found = true;
                            }
                        if (!found) mono.terms.push_back({term.index, 0, term.c});
                    }
                    rep.per_monomial.push_back({mono, measured, 0.0, std::abs(measured)});
                }
            }
        }
    }

    const FrameOperator f = frame_operator(ensemble, t, dim_budget);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f.matrix, Eigen::EigenvaluesOnly);
    const double m = double(f.matrix.rows());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        rep.epsilon = std::max(rep.epsilon, std::abs(es.eigenvalues()(i) * m - 1.0));
    rep.off_support_residual = f.off_support_residual;
    rep.frame_trace_error = std::abs(f.matrix.trace().real() - 1.0);

    double tfac = 1.0;
    for (unsigned i = 2; i <= t; ++i) tfac *= double(i);
    rep.theorem_bound_margin = tfac * rep.max_balanced_rel_dev - rep.epsilon;
    rep.theorem_bound_applicable = ensemble.variant() != Variant::Improved;
    return rep;
}

} // namespace tdesign
