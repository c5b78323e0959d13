#include "tdesign/ensemble.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tdesign {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_build_args(std::uint64_t n, unsigned t) {
    if (!is_pow2(n)) throw std::invalid_argument("build_design: N must be a power of two");
    if (t < 1) throw std::invalid_argument("build_design: t must be at least 1");
    if (n < t) throw std::invalid_argument("build_design: need N >= t for a t-wise family");
}

} // namespace

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::Main: return "main";
    case Variant::Improved: return "improved";
    case Variant::Mub: return "mub";
    case Variant::CustomList: return "custom-list";
    }
    return "?";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void DesignEnsemble::init_levels() {
    // Rounded rule with every weight a multiple of 1/N; when N cannot hold all
    // nodes the dropped q x^2 mass is restored by a global node rescale so the
    // per-coordinate second moment stays exactly 1/N (POVM completeness).
    const QuadratureRule base = gauss_rule(limit_moments(t_));
    rule_ = round_rule(base, n_);
    double kept_mass = 0.0;
    for (std::size_t l = 0; l < rule_.node_count(); ++l)
        kept_mass += rule_.weights[l] * rule_.nodes[l] * rule_.nodes[l];
    node_rescale_ = 1.0 / std::sqrt(kept_mass);
    if (std::abs(kept_mass - 1.0) < 1e-13) node_rescale_ = 1.0;
    for (std::size_t l = 0; l < rule_.node_count(); ++l) rule_.nodes[l] *= node_rescale_;

    level_amp_.resize(rule_.node_count());
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n_));
    for (std::size_t l = 0; l < rule_.node_count(); ++l)
        level_amp_[l] = rule_.nodes[l] * inv_sqrt_n;

    level_of_value_.assign(n_, 0);
    std::uint64_t cum = 0;
    std::uint32_t level = 0;
    for (std::uint64_t v = 0; v < n_; ++v) {
        while (v >= cum + rule_.units[level]) {
            cum += rule_.units[level];
            ++level;
        }
        level_of_value_[v] = level;
    }
}

DesignEnsemble DesignEnsemble::main(std::uint64_t n, unsigned t) {
    check_build_args(n, t);
    DesignEnsemble e;
    e.variant_ = Variant::Main;
    e.n_ = n;
    e.t_ = t;
    e.f_family_ = FunctionFamily::exact(n, t);
    e.g_family_ = FunctionFamily::exact(n, 2 * t);
    e.magnitude_count_ = e.f_family_->size();
    e.phase_count_ = e.g_family_->size();
    e.size_ = e.magnitude_count_ * e.phase_count_;
    e.phase_modulus_ = n;
    e.phase_table_.resize(n);
    for (std::uint64_t v = 0; v < n; ++v)
        e.phase_table_[v] = std::polar(1.0, 2.0 * kPi * double(v) / double(n));
    e.init_levels();
    return e;
}

DesignEnsemble DesignEnsemble::improved(std::uint64_t n, unsigned t, double epsilon) {
    check_build_args(n, t);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("build_design_improved: epsilon must lie in (0,1)");
    DesignEnsemble e;
    e.variant_ = Variant::Improved;
    e.n_ = n;
    e.t_ = t;
    e.epsilon_requested_ = epsilon;
    e.f_family_ = FunctionFamily::exact(n, t);
    e.g1_family_ = FunctionFamily::binary(n, 2 * t);
    std::uint64_t m = 2;
    while (m <= t) m <<= 1;
    e.phase_modulus_ = m;
    unsigned w = 0;
    while ((std::uint64_t(1) << w) < m) ++w; // w = log2(m)
    for (unsigned u = 0; u + 1 < w; ++u)
        e.phase_bit_families_.push_back(FunctionFamily::binary(n, t));
    e.magnitude_count_ = e.f_family_->size();
    e.phase_count_ = e.g1_family_->size();
    for (const auto& fam : e.phase_bit_families_) e.phase_count_ *= fam.size();
    e.size_ = e.magnitude_count_ * e.phase_count_;
    e.phase_table_.resize(m);
    for (std::uint64_t v = 0; v < m; ++v)
        e.phase_table_[v] = std::polar(1.0, 2.0 * kPi * double(v) / double(m));
    e.init_levels();
    return e;
}

DesignEnsemble DesignEnsemble::mub(std::uint64_t n) {
    if (!is_prime(n)) throw std::invalid_argument("build_mub_design: N must be prime");
    DesignEnsemble e;
    e.variant_ = Variant::Mub;
    e.n_ = n;
    e.t_ = 2;
    e.size_ = n * (n + 1);
    e.mub_states_.reserve(e.size_);
    if (n == 2) {
        const Complex i(0.0, 1.0);
        const double s = 1.0 / std::sqrt(2.0);
        auto push = [&](Complex a0, Complex a1) {
            PureState st;
            st.amplitudes.resize(2);
            st.amplitudes << a0, a1;
            e.mub_states_.push_back(std::move(st));
        };
        push(1.0, 0.0);
        push(0.0, 1.0);
        push(s, s);
        push(s, -s);
        push(s, i * s);
        push(s, -i * s);
    } else {
        const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
        for (std::uint64_t j = 0; j < n; ++j)
            e.mub_states_.push_back(PureState::basis(Eigen::Index(n), Eigen::Index(j)));
        for (std::uint64_t a = 0; a < n; ++a) {
            for (std::uint64_t b = 0; b < n; ++b) {
                PureState st;
                st.amplitudes.resize(Eigen::Index(n));
                for (std::uint64_t j = 0; j < n; ++j) {
                    const std::uint64_t ph = (a * j % n * j + b * j) % n;
                    st.amplitudes(Eigen::Index(j)) =
                        std::polar(inv_sqrt_n, 2.0 * kPi * double(ph) / double(n));
                }
                e.mub_states_.push_back(std::move(st));
            }
        }
    }
    return e;
}

DesignEnsemble DesignEnsemble::custom(std::vector<Element> elements, unsigned t) {
    if (elements.empty()) throw std::invalid_argument("custom ensemble needs elements");
    DesignEnsemble e;
    e.variant_ = Variant::CustomList;
    e.n_ = std::uint64_t(elements.front().state.dim());
    e.t_ = t;
    e.size_ = elements.size();
    e.custom_elements_ = std::move(elements);
    return e;
}

void DesignEnsemble::magnitudes(std::uint64_t fi, std::vector<double>& a, double& sumsq) const {
    a.resize(n_);
    sumsq = 0.0;
    for (std::uint64_t j = 0; j < n_; ++j) {
        const std::uint64_t v = f_family_->eval(fi, j);
        const double amp = level_amp_[level_of_value_[std::size_t(v)]];
        a[std::size_t(j)] = amp;
        sumsq += amp * amp;
    }
}

void DesignEnsemble::phases(std::uint64_t gi, std::vector<Complex>& ph) const {
    ph.resize(n_);
    if (variant_ == Variant::Main) {
        for (std::uint64_t j = 0; j < n_; ++j)
            ph[std::size_t(j)] = phase_table_[std::size_t(g_family_->eval(gi, j))];
        return;
    }
    // improved: index splits as g1-major over the phase bit families
    std::uint64_t rest = gi;
    std::uint64_t bit_idx[8];
    for (std::size_t u = phase_bit_families_.size(); u-- > 0;) {
        bit_idx[u] = rest % phase_bit_families_[u].size();
        rest /= phase_bit_families_[u].size();
    }
    const std::uint64_t g1i = rest;
    const std::uint64_t half = phase_modulus_ / 2;
    for (std::uint64_t j = 0; j < n_; ++j) {
        std::uint64_t v = g1_family_->eval(g1i, j) * half;
        for (std::size_t u = 0; u < phase_bit_families_.size(); ++u)
            v += phase_bit_families_[u].eval(bit_idx[u], j) << u;
        ph[std::size_t(j)] = phase_table_[std::size_t(v % phase_modulus_)];
    }
}

Element DesignEnsemble::element(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("ensemble element index out of range");
    switch (variant_) {
    case Variant::CustomList:
        return custom_elements_[std::size_t(index)];
    case Variant::Mub: {
        Element el;
        el.weight = 1.0 / double(size_);
        el.state = mub_states_[std::size_t(index)];
        return el;
    }
    default: {
        const std::uint64_t fi = index / phase_count_;
        const std::uint64_t gi = index % phase_count_;
        std::vector<double> a;
        double sumsq = 0.0;
        magnitudes(fi, a, sumsq);
        std::vector<Complex> ph;
        phases(gi, ph);
        Element el;
        el.weight = sumsq / double(size_);
        el.state.amplitudes.resize(Eigen::Index(n_));
        const double inv_norm = 1.0 / std::sqrt(sumsq);
        for (std::uint64_t j = 0; j < n_; ++j)
            el.state.amplitudes(Eigen::Index(j)) = a[std::size_t(j)] * inv_norm * ph[std::size_t(j)];
        return el;
    }
    }
}

} // namespace tdesign
