#pragma once

#include "tdesign/gf.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace tdesign {

enum class FamilyKind { ExactPoly, BinaryExact, DeltaDependent };

// A k-wise independent (or k-wise delta-dependent) family of functions
// {0..N-1} -> {0..m-1}. Members are indexed, never materialized: eval()
// regenerates any value from (member index, point).
class FunctionFamily {
public:
    // All polynomials of degree <= k-1 over GF(N); exactly k-wise independent.
    static FunctionFamily exact(std::uint64_t n, unsigned k);

    // Same construction with range m != N: for m > N the polynomials live over
    // GF(m) with the domain embedded by bit pattern; for m < N the GF(N) value
    // is truncated to its top log2(m) bits. Exactly k-wise independent either way.
    static FunctionFamily exact_into(std::uint64_t n, std::uint64_t m, unsigned k);

    // Binary k-wise independent family of cardinality 2*N^ceil(k/2) built from
    // the odd-power (dual BCH) code: member (s0, s1..su) maps x to
    // s0 + <s1, x> + <s2, x^3> + ... over GF(2).
    static FunctionFamily binary(std::uint64_t n, unsigned k);

    // k-wise delta-dependent family via a small-bias seed space: output bits are
    // inner products of code words (1, y, y^2, ...) over GF(2^b) against an
    // epsilon-biased seed generated by an LFSR (member = feedback polynomial +
    // start state).
    static FunctionFamily delta_dependent(std::uint64_t n, std::uint64_t m,
                                          unsigned k, double delta);

    FamilyKind kind() const { return kind_; }
    std::uint64_t domain_size() const { return n_; }
    std::uint64_t range_size() const { return m_; }
    unsigned order() const { return k_; }
    double delta() const { return delta_; }
    std::uint64_t size() const { return size_; }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t eval(std::uint64_t member, std::uint64_t x) const;

private:
    FunctionFamily() = default;

    FamilyKind kind_ = FamilyKind::ExactPoly;
    std::uint64_t n_ = 0, m_ = 0;
    unsigned k_ = 0;
    double delta_ = 0.0;
    std::uint64_t size_ = 0;
    std::uint64_t seed_ = 0;

    // exact-polynomial state
    unsigned field_degree_ = 0;
    unsigned shift_ = 0; // right shift applied when m < field order

    // binary-exact state: odd powers x, x^3, ..., precomputed per point
    std::vector<std::uint32_t> power_table_; // [pow][x], row-major
    unsigned n_powers_ = 0;

    // delta-dependent state
    unsigned bits_per_point_ = 0;      // w = log2(m)
    unsigned code_len_ = 0;            // l = k*w * b
    unsigned lfsr_degree_ = 0;         // r
    std::vector<std::uint32_t> feedback_polys_; // monic irreducible, degree r
    std::vector<std::uint64_t> code_words_;     // C(pos) for pos < N*w
};

// Maximum, over all k-subsets of the domain, of the variational distance
// between the tuple distribution and uniform on {0..m-1}^k. The generic
// overload takes any evaluator; cost is C(N,k) * members * k evaluations and
// is rejected when it exceeds the budget.
double family_bias(std::uint64_t n, std::uint64_t m, std::uint64_t member_count,
                   const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& eval,
                   unsigned k, std::uint64_t budget = 200'000'000);
double family_bias(const FunctionFamily& fam, unsigned k,
                   std::uint64_t budget = 200'000'000);

// Monic irreducible polynomials of the given degree over GF(2), full bit
// pattern including the leading term. Deterministic ascending order.
std::vector<std::uint32_t> irreducible_polys_gf2(unsigned degree);

} // namespace tdesign
