#pragma once

#include "tdesign/rational.hpp"

#include <cstdint>
#include <vector>

namespace tdesign {

// Product of amplitude powers: for each term, alpha_{index}^c * conj(alpha_{index})^d.
struct MonomialTerm {
    std::uint32_t index = 0;
    std::uint32_t c = 0;
    std::uint32_t d = 0;
};

struct Monomial {
    std::vector<MonomialTerm> terms;

    bool balanced() const {
        for (const auto& t : terms)
            if (t.c != t.d) return false;
        return true;
    }
    std::uint32_t degree_plain() const {
        std::uint32_t s = 0;
        for (const auto& t : terms) s += t.c;
        return s;
    }
    std::uint32_t degree_conj() const {
        std::uint32_t s = 0;
        for (const auto& t : terms) s += t.d;
        return s;
    }
    void validate(std::uint64_t n_dim) const; // distinct indices < n_dim, >= 1 term
};

// Exact Haar expectation of the monomial over the unit sphere in C^N:
// zero when unbalanced, otherwise prod c_j! / (N (N+1) ... (N+d-1)).
Rational haar_expectation(std::uint64_t n_dim, const Monomial& m);

// dim of the symmetric subspace for t copies: multisets of size t from N symbols.
std::uint64_t symmetric_dim(std::uint64_t n, unsigned t);

// Number of distinct orderings of a sorted index multiset: t!/(c_1!...c_k!).
std::uint64_t multiset_weight(const std::vector<std::uint32_t>& sorted_indices);

} // namespace tdesign
