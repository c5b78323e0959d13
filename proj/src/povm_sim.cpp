#include "tdesign/povm_sim.hpp"

#include "tdesign/gf.hpp"
#include "tdesign/parallel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tdesign {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

unsigned log2_pow2(std::uint64_t v) {
    unsigned k = 0;
    while ((std::uint64_t(1) << k) < v) ++k;
    if ((std::uint64_t(1) << k) != v) throw std::invalid_argument("dimension must be a power of two");
    return k;
}

std::size_t draw_from(const std::vector<double>& pdf, double total, Rng& rng) {
    const double u = rng.uniform() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < pdf.size(); ++i) {
        cum += pdf[i];
        if (u < cum) return i;
    }
    return pdf.size() - 1;
}

void check_rounded(const QuadratureRule& rule, std::uint64_t n) {
    if (!rule.rounded || rule.denom != n)
        throw std::invalid_argument("stage_f: rule weights must be multiples of 1/N "
                                    "(run round_rule for this N first)");
    if (std::accumulate(rule.units.begin(), rule.units.end(), std::uint64_t(0)) != n)
        throw std::invalid_argument("stage_f: rule weight units must sum to N");
}

} // namespace

// Index conventions. Stage one follows the magnitude families of the design:
// f_c(x) = c_{t-1} x^{t-1} + ... + c_1 x + c_0 over GF(N), the ancilla shift
// is the XOR shift, so the induced magnitudes match the built ensemble
// exactly. Stage two measures shifted Fourier bases; those bases slice phase
// states whose exponent polynomial g(x) = d_0 + d_1 x + ... is evaluated
// mod N in the integers (the Fourier relation U_{g_0}|psi'_l> = |psi_{g_l}>
// only holds for mod-N linear structure). The two coefficient arithmetics
// agree at N = 2; direct_distribution uses the same mod-N phase family so
// composition is checked against the POVM the protocol actually measures.

TwoStageSampler::TwoStageSampler(const DesignEnsemble& ensemble) {
    if (ensemble.variant() != Variant::Main)
        throw std::invalid_argument("TwoStageSampler expects the main construction");
    init(ensemble.dim(), ensemble.order(), ensemble.rule());
}

TwoStageSampler::TwoStageSampler(std::uint64_t n, unsigned t, const QuadratureRule& rounded_rule) {
    init(n, t, rounded_rule);
}

void TwoStageSampler::init(std::uint64_t n, unsigned t, const QuadratureRule& rule) {
    n_ = n;
    t_ = t;
    field_degree_ = log2_pow2(n_);
    check_rounded(rule, n_);
    f_count_ = 1;
    for (unsigned i = 0; i < t; ++i) f_count_ *= n;
    g_count_ = 1;
    for (unsigned i = 0; i < 2 * t; ++i) g_count_ *= n;
    size_ = f_count_ * g_count_;

    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    level_amp_.resize(rule.node_count());
    for (std::size_t l = 0; l < rule.node_count(); ++l)
        level_amp_[l] = rule.nodes[l] * inv_sqrt_n;
    level_of_value_.assign(std::size_t(n_), 0);
    std::uint64_t cum = 0;
    std::uint32_t level = 0;
    for (std::uint64_t v = 0; v < n_; ++v) {
        while (v >= cum + rule.units[level]) {
            cum += rule.units[level];
            ++level;
        }
        level_of_value_[std::size_t(v)] = level;
    }
    roots_.resize(std::size_t(n_));
    for (std::uint64_t v = 0; v < n_; ++v)
        roots_[std::size_t(v)] = std::polar(1.0, 2.0 * kPi * double(v) / double(n_));
}

std::uint32_t TwoStageSampler::f_value(const std::vector<std::uint32_t>& coeffs,
                                       std::uint32_t x) const {
    Gf2k field(field_degree_);
    std::uint32_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.mul(acc, x) ^ coeffs[i];
    return acc;
}

std::uint32_t TwoStageSampler::g_value(const std::vector<std::uint32_t>& coeffs,
                                       std::uint32_t x) const {
    // mod-N integer Horner
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc * x + coeffs[i]) % n_;
    return std::uint32_t(acc);
}

void TwoStageSampler::collapse(const PureState& psi, const std::vector<std::uint32_t>& coeffs,
                               PureState& out) const {
    out.amplitudes.resize(psi.amplitudes.size());
    for (std::uint64_t j = 0; j < n_; ++j) {
        const std::uint32_t v = f_value(coeffs, std::uint32_t(j));
        out.amplitudes(Eigen::Index(j)) =
            psi.amplitudes(Eigen::Index(j)) * level_amp_[level_of_value_[v]];
    }
    const double norm = out.amplitudes.norm();
    if (norm > 0) out.amplitudes /= norm;
}

double TwoStageSampler::stage1_conditional(const PureState& psi,
                                           const std::vector<std::uint32_t>& high_coeffs,
                                           std::vector<double>& per_c0) const {
    // induced distribution of the ancilla-shift outcome c_0 given c_1..c_{t-1}
    per_c0.assign(std::size_t(n_), 0.0);
    Gf2k field(field_degree_);
    for (std::uint64_t j = 0; j < n_; ++j) {
        // m(j) = c_{t-1} j^{t-1} + ... + c_1 j, no constant term
        std::uint32_t m = 0;
        for (std::size_t i = high_coeffs.size(); i-- > 0;)
            m = field.mul(m, std::uint32_t(j)) ^ high_coeffs[i];
        m = field.mul(m, std::uint32_t(j));
        const double w = std::norm(psi.amplitudes(Eigen::Index(j)));
        for (std::uint32_t c0 = 0; c0 < n_; ++c0) {
            const double a = level_amp_[level_of_value_[c0 ^ m]];
            per_c0[c0] += w * a * a;
        }
    }
    return std::accumulate(per_c0.begin(), per_c0.end(), 0.0);
}

std::vector<double> TwoStageSampler::stage_f_pdf(const PureState& psi,
                                                 const std::vector<std::uint32_t>& high_coeffs) const {
    if (high_coeffs.size() + 1 != t_)
        throw std::invalid_argument("stage_f_pdf: expected t-1 high coefficients");
    std::vector<double> per_c0;
    stage1_conditional(psi, high_coeffs, per_c0);
    // already a probability vector: the stage-one operators form a POVM
    return per_c0;
}

std::vector<double> TwoStageSampler::stage_g_pdf(const PureState& psi,
                                                 std::vector<std::uint32_t> d) const {
    if (d.size() != 2 * t_) throw std::invalid_argument("stage_g_pdf: expected 2t coefficients");
    std::vector<double> pdf(std::size_t(n_), 0.0);
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    double total = 0.0;
    for (std::uint32_t l = 0; l < n_; ++l) {
        d[1] = l;
        Complex overlap(0.0, 0.0);
        for (std::uint64_t j = 0; j < n_; ++j)
            overlap += std::conj(roots_[g_value(d, std::uint32_t(j))]) * inv_sqrt_n *
                       psi.amplitudes(Eigen::Index(j));
        pdf[l] = std::norm(overlap);
        total += pdf[l];
    }
    (void)total; // sums to one: the shifted Fourier vectors form a basis
    return pdf;
}

StageFResult TwoStageSampler::stage_f(const PureState& psi, Rng& rng) const {
    StageFResult res;
    res.coefficients.assign(t_, 0);
    for (unsigned i = 1; i < t_; ++i)
        res.coefficients[i] = std::uint32_t(rng.uniform_int(n_));
    std::vector<std::uint32_t> high(res.coefficients.begin() + 1, res.coefficients.end());
    std::vector<double> per_c0;
    const double total = stage1_conditional(psi, high, per_c0);
    res.coefficients[0] = std::uint32_t(draw_from(per_c0, total, rng));
    collapse(psi, res.coefficients, res.collapsed);
    return res;
}

std::vector<std::uint32_t> TwoStageSampler::stage_g(const PureState& psi, Rng& rng) const {
    std::vector<std::uint32_t> d(2 * t_, 0);
    for (unsigned i = 0; i < 2 * t_; ++i)
        if (i != 1) d[i] = std::uint32_t(rng.uniform_int(n_));
    // d_1 from the orthogonal measurement in the U_{g_0}-shifted Fourier basis
    std::vector<double> pdf(std::size_t(n_), 0.0);
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    for (std::uint32_t l = 0; l < n_; ++l) {
        d[1] = l;
        Complex overlap(0.0, 0.0);
        for (std::uint64_t j = 0; j < n_; ++j)
            overlap += std::conj(roots_[g_value(d, std::uint32_t(j))]) * inv_sqrt_n *
                       psi.amplitudes(Eigen::Index(j));
        pdf[l] = std::norm(overlap);
    }
    const double total = std::accumulate(pdf.begin(), pdf.end(), 0.0);
    d[1] = std::uint32_t(draw_from(pdf, total, rng));
    return d;
}

std::uint64_t TwoStageSampler::sample_outcome(const PureState& psi, Rng& rng) const {
    const StageFResult fres = stage_f(psi, rng);
    const std::vector<std::uint32_t> d = stage_g(fres.collapsed, rng);
    std::uint64_t fi = 0;
    for (std::size_t i = fres.coefficients.size(); i-- > 0;) fi = fi * n_ + fres.coefficients[i];
    std::uint64_t gi = 0;
    for (std::size_t i = d.size(); i-- > 0;) gi = gi * n_ + d[i];
    return fi * g_count_ + gi;
}

std::vector<double> TwoStageSampler::direct_distribution(const PureState& psi) const {
    // <psi| E_{f,d} |psi> with E_{f,d} = N p_{f,d} |psi_{f,d}><psi_{f,d}|
    std::vector<double> probs(static_cast<std::size_t>(size_), 0.0);
    std::vector<std::uint32_t> c(t_), d(2 * t_);
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    for (std::uint64_t fi = 0; fi < f_count_; ++fi) {
        std::uint64_t rest = fi;
        for (unsigned i = 0; i < t_; ++i) {
            c[i] = std::uint32_t(rest % n_);
            rest /= n_;
        }
        double sumsq = 0.0;
        std::vector<double> a(static_cast<std::size_t>(n_), 0.0);
        for (std::uint64_t j = 0; j < n_; ++j) {
            a[std::size_t(j)] = level_amp_[level_of_value_[f_value(c, std::uint32_t(j))]];
            sumsq += a[std::size_t(j)] * a[std::size_t(j)];
        }
        const double weight = sumsq / double(size_);
        const double inv_norm = 1.0 / std::sqrt(sumsq);
        for (std::uint64_t gi = 0; gi < g_count_; ++gi) {
            std::uint64_t drest = gi;
            for (unsigned i = 0; i < 2 * t_; ++i) {
                d[i] = std::uint32_t(drest % n_);
                drest /= n_;
            }
            Complex ov(0.0, 0.0);
            for (std::uint64_t j = 0; j < n_; ++j) {
                const Complex amp = a[std::size_t(j)] * inv_norm *
                                    roots_[g_value(d, std::uint32_t(j))];
                ov += std::conj(amp) * psi.amplitudes(Eigen::Index(j));
            }
            probs[std::size_t(fi * g_count_ + gi)] = double(n_) * weight * std::norm(ov);
        }
    }
    (void)inv_sqrt_n;
    return probs;
}

std::vector<double> TwoStageSampler::composed_distribution(const PureState& psi) const {
    std::vector<double> probs(std::size_t(size_), 0.0);
    const std::uint64_t high_combos = f_count_ / n_; // N^{t-1}
    std::vector<std::uint32_t> high(t_ > 0 ? t_ - 1 : 0, 0);
    std::vector<double> per_c0;
    PureState collapsed;
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    const double stage1_norm = 1.0 / double(high_combos);
    const std::uint64_t d_free = g_count_ / n_; // N^{2t-1} combos of d_0, d_2..
    const double stage2_norm = 1.0 / double(d_free);

    std::vector<std::uint32_t> coeffs(t_), d(2 * t_);
    for (std::uint64_t hc = 0; hc < high_combos; ++hc) {
        std::uint64_t rest = hc;
        for (unsigned i = 0; i + 1 < t_; ++i) {
            high[i] = std::uint32_t(rest % n_);
            rest /= n_;
        }
        stage1_conditional(psi, high, per_c0);
        for (std::uint32_t c0 = 0; c0 < n_; ++c0) {
            const double p1 = per_c0[c0] * stage1_norm;
            coeffs[0] = c0;
            for (unsigned i = 1; i < t_; ++i) coeffs[i] = high[i - 1];
            collapse(psi, coeffs, collapsed);
            std::uint64_t fi = 0;
            for (std::size_t i = coeffs.size(); i-- > 0;) fi = fi * n_ + coeffs[i];

            for (std::uint64_t dc = 0; dc < d_free; ++dc) {
                std::uint64_t drest = dc;
                for (unsigned i = 0; i < 2 * t_; ++i) {
                    if (i == 1) continue;
                    d[i] = std::uint32_t(drest % n_);
                    drest /= n_;
                }
                for (std::uint32_t l = 0; l < n_; ++l) {
                    d[1] = l;
                    Complex overlap(0.0, 0.0);
                    for (std::uint64_t j = 0; j < n_; ++j)
                        overlap += std::conj(roots_[g_value(d, std::uint32_t(j))]) * inv_sqrt_n *
                                   collapsed.amplitudes(Eigen::Index(j));
                    std::uint64_t gi = 0;
                    for (std::size_t i = d.size(); i-- > 0;) gi = gi * n_ + d[i];
                    probs[std::size_t(fi * g_count_ + gi)] = p1 * std::norm(overlap) * stage2_norm;
                }
            }
        }
    }
    return probs;
}

std::vector<std::uint64_t> TwoStageSampler::sample_histogram(const PureState& psi,
                                                             std::uint64_t count,
                                                             std::uint64_t seed) const {
    using Hist = std::vector<std::uint64_t>;
    Hist zero(std::size_t(size_), 0);
    constexpr std::uint64_t kTrialChunk = 8192;
    return chunked_reduce<Hist>(
        count, kTrialChunk, zero,
        [&](std::uint64_t begin, std::uint64_t end, Hist& acc) {
            Rng rng(mix_seed(seed, begin / kTrialChunk));
            for (std::uint64_t i = begin; i < end; ++i)
                ++acc[std::size_t(sample_outcome(psi, rng))];
        },
        [](Hist& a, const Hist& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        });
}

StageFResult stage_f(const PureState& psi, unsigned t, const QuadratureRule& rounded_rule,
                     Rng& rng) {
    const std::uint64_t n = std::uint64_t(psi.amplitudes.size());
    TwoStageSampler sampler(n, t, rounded_rule);
    return sampler.stage_f(psi, rng);
}

std::vector<std::uint32_t> stage_g(const PureState& psi, unsigned t, Rng& rng) {
    const std::uint64_t n = std::uint64_t(psi.amplitudes.size());
    DesignEnsemble ens = DesignEnsemble::main(n, t);
    TwoStageSampler sampler(ens);
    return sampler.stage_g(psi, rng);
}

std::vector<std::uint64_t> sample_povm(const PureState& psi, std::uint64_t n, unsigned t,
                                       std::uint64_t count, std::uint64_t seed) {
    if (std::uint64_t(psi.amplitudes.size()) != n)
        throw std::invalid_argument("sample_povm: state dimension mismatch");
    DesignEnsemble ens = DesignEnsemble::main(n, t);
    TwoStageSampler sampler(ens);
    return sampler.sample_histogram(psi, count, seed);
}

} // namespace tdesign
