#pragma once

#include "tdesign/kwise.hpp"
#include "tdesign/quadrature.hpp"
#include "tdesign/states.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tdesign {

enum class Variant { Main, Improved, Mub, CustomList };

std::string variant_name(Variant v);

struct Element {
    double weight = 0.0;
    PureState state;
};

// Weighted family (p_i, |phi_i>) generated lazily from its parameters.
// Main and improved variants factor every element as a magnitude profile
// indexed by f times a unit-modulus phase profile indexed by the g-side
// families; verification exploits that split.
class DesignEnsemble {
public:
    // Main construction: f in an exact t-wise family, g in an exact 2t-wise
    // family, amplitude levels from the rounded quadrature rule, phases
    // exp(2*pi*i*g(j)/N). Size N^{3t}.
    static DesignEnsemble main(std::uint64_t n, unsigned t);

    // Improved construction: phases (-1)^{g1(j)} * exp(2*pi*i*g2(j)/m) with m
    // the smallest power of two above t, g1 an exact 2t-wise binary family and
    // g2 assembled from exact t-wise binary families (one per low bit of m).
    static DesignEnsemble improved(std::uint64_t n, unsigned t, double epsilon);

    // N+1 mutually unbiased bases in prime dimension, uniform weights.
    static DesignEnsemble mub(std::uint64_t n);

    static DesignEnsemble custom(std::vector<Element> elements, unsigned t);

    Variant variant() const { return variant_; }
    std::uint64_t dim() const { return n_; }
    unsigned order() const { return t_; }
    std::uint64_t size() const { return size_; }
    std::optional<double> epsilon_requested() const { return epsilon_requested_; }
    const QuadratureRule& rule() const { return rule_; }
    bool below_theorem_range() const { return n_ < 2 * std::uint64_t(t_); }
    double node_rescale() const { return node_rescale_; }

    Element element(std::uint64_t index) const;

    // magnitude x phase factorization (main / improved)
    bool has_product_structure() const { return variant_ == Variant::Main || variant_ == Variant::Improved; }
    std::uint64_t magnitude_count() const { return magnitude_count_; }
    std::uint64_t phase_count() const { return phase_count_; }
    // signed amplitudes a_j (before normalization) and their square sum
    void magnitudes(std::uint64_t fi, std::vector<double>& a, double& sumsq) const;
    void phases(std::uint64_t gi, std::vector<Complex>& ph) const;

    const FunctionFamily* f_family() const { return f_family_ ? &*f_family_ : nullptr; }
    const FunctionFamily* g_family() const { return g_family_ ? &*g_family_ : nullptr; }
    const FunctionFamily* g1_family() const { return g1_family_ ? &*g1_family_ : nullptr; }
    const std::vector<FunctionFamily>& phase_bit_families() const { return phase_bit_families_; }
    std::uint64_t phase_modulus() const { return phase_modulus_; }

private:
    DesignEnsemble() = default;
    void init_levels();

    Variant variant_ = Variant::CustomList;
    std::uint64_t n_ = 0;
    unsigned t_ = 0;
    std::uint64_t size_ = 0;
    std::optional<double> epsilon_requested_;

    QuadratureRule rule_;
    double node_rescale_ = 1.0;          // restores unit second moment after drops
    std::vector<double> level_amp_;      // signed node/sqrt(N) per level, rescaled
    std::vector<std::uint32_t> level_of_value_;

    std::optional<FunctionFamily> f_family_;
    std::optional<FunctionFamily> g_family_;   // main
    std::optional<FunctionFamily> g1_family_;  // improved
    std::vector<FunctionFamily> phase_bit_families_;
    std::uint64_t phase_modulus_ = 0;
    std::uint64_t magnitude_count_ = 0;
    std::uint64_t phase_count_ = 0;

    std::vector<Complex> phase_table_; // e^{2 pi i v / N} (main) or m-th roots

    std::vector<Element> custom_elements_;
    std::vector<PureState> mub_states_;
};

bool is_prime(std::uint64_t n);

} // namespace tdesign
