#include "tdesign/kwise.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace tdesign {

namespace {

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

unsigned log2_exact(std::uint64_t v) {
    if (!is_pow2(v)) throw std::invalid_argument("value must be a power of two");
    return unsigned(std::countr_zero(v));
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / base) throw std::overflow_error("family size overflows 64 bits");
        r *= base;
    }
    return r;
}

unsigned parity64(std::uint64_t v) { return unsigned(std::popcount(v) & 1); }

// carry-less multiply mod a GF(2) polynomial, both under 32 bits of degree
std::uint32_t gf2_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t mod, unsigned deg) {
    std::uint64_t acc = 0, aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int bit = 2 * int(deg) - 2; bit >= int(deg); --bit)
        if (acc >> bit & 1) acc ^= std::uint64_t(mod) << (bit - int(deg));
    return std::uint32_t(acc);
}

} // namespace

std::vector<std::uint32_t> irreducible_polys_gf2(unsigned degree) {
    if (degree == 0 || degree > 24) throw std::invalid_argument("degree out of range");
    // p is irreducible iff x^(2^degree) == x mod p and gcd-style checks on
    // proper divisors of the degree hold; at these sizes trial division over
    // all lower-degree monics is simpler and fast enough.
    std::vector<std::uint32_t> out;
    const std::uint32_t lo = std::uint32_t(1) << degree;
    const std::uint32_t hi = lo << 1;
    // sieve of reducibles: mark products of all monic pairs
    std::vector<bool> reducible(hi, false);
    for (unsigned da = 1; 2 * da <= degree; ++da) {
        for (std::uint32_t a = (1u << da); a < (2u << da); ++a) {
            unsigned db = degree - da;
            for (std::uint32_t b = (1u << db); b < (2u << db); ++b) {
                // carry-less product
                std::uint64_t prod = 0, aa = a;
                std::uint32_t bb = b;
                while (bb) {
                    if (bb & 1) prod ^= aa;
                    aa <<= 1;
                    bb >>= 1;
                }
                if (prod < hi) reducible[std::size_t(prod)] = true;
            }
        }
    }
    for (std::uint32_t p = lo; p < hi; ++p)
        if (!reducible[p]) out.push_back(p);
    return out;
}

FunctionFamily FunctionFamily::exact(std::uint64_t n, unsigned k) {
    return exact_into(n, n, k);
}

FunctionFamily FunctionFamily::exact_into(std::uint64_t n, std::uint64_t m, unsigned k) {
    if (!is_pow2(n)) throw std::invalid_argument("exact family: N must be a power of two");
    if (!is_pow2(m)) throw std::invalid_argument("exact family: range must be a power of two");
    // k beyond N degenerates to full independence over the N points; the
    // coefficient count is capped only by the 64-bit index space.
    if (k < 1 || k > 63) throw std::invalid_argument("exact family: need 1 <= k <= 63");
    FunctionFamily fam;
    fam.kind_ = FamilyKind::ExactPoly;
    fam.n_ = n;
    fam.m_ = m;
    fam.k_ = k;
    fam.delta_ = 0.0;
    const std::uint64_t field_order = std::max(n, m);
    fam.field_degree_ = log2_exact(field_order);
    fam.shift_ = log2_exact(field_order / m);
    fam.size_ = checked_pow(field_order, k);
    return fam;
}

FunctionFamily FunctionFamily::binary(std::uint64_t n, unsigned k) {
    if (!is_pow2(n)) throw std::invalid_argument("binary family: N must be a power of two");
    if (k < 1 || k > 63) throw std::invalid_argument("binary family: need 1 <= k <= 63");
    FunctionFamily fam;
    fam.kind_ = FamilyKind::BinaryExact;
    fam.n_ = n;
    fam.m_ = 2;
    fam.k_ = k;
    fam.delta_ = 0.0;
    fam.field_degree_ = log2_exact(n);
    fam.n_powers_ = (k + 1) / 2;
    fam.size_ = 2 * checked_pow(n, fam.n_powers_);
    Gf2k field(fam.field_degree_);
    fam.power_table_.resize(std::size_t(fam.n_powers_) * n);
    for (unsigned u = 0; u < fam.n_powers_; ++u)
        for (std::uint64_t x = 0; x < n; ++x)
            fam.power_table_[std::size_t(u) * n + x] =
                field.pow(std::uint32_t(x), 2 * std::uint64_t(u) + 1);
    return fam;
}

FunctionFamily FunctionFamily::delta_dependent(std::uint64_t n, std::uint64_t m,
                                               unsigned k, double delta) {
    if (!is_pow2(m)) throw std::invalid_argument("delta family: range must be a power of two");
    if (n < 2 || k < 1) throw std::invalid_argument("delta family: need N >= 2, k >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta family: delta must be positive");
    FunctionFamily fam;
    fam.kind_ = FamilyKind::DeltaDependent;
    fam.n_ = n;
    fam.m_ = m;
    fam.k_ = k;
    fam.delta_ = delta;
    fam.bits_per_point_ = std::max(1u, log2_exact(m));

    const unsigned w = fam.bits_per_point_;
    const std::uint64_t positions = n * w;
    const unsigned k_bits = k * w;
    unsigned b = 1;
    while ((std::uint64_t(1) << b) < positions) ++b;
    const unsigned code_len = k_bits * b;
    if (code_len > 64)
        throw std::invalid_argument("delta family: parameters exceed the 64-bit code budget");
    fam.code_len_ = code_len;

    // XOR-to-variational conversion: a beta-biased seed gives tuple distance
    // at most sqrt(2^kbits - 1)/2 * beta over any k points.
    const double beta = 2.0 * delta / std::sqrt(std::pow(2.0, double(k_bits)) - 1.0);
    unsigned r = 2;
    for (;; ++r) {
        if (r > 24) throw std::invalid_argument("delta family: delta too small for the 24-bit LFSR budget");
        const double n_irred_lb = (std::pow(2.0, double(r)) - 2.0 * std::pow(2.0, double(r) / 2.0)) / double(r);
        if (n_irred_lb <= 0) continue;
        const double bias_bound = std::floor(double(code_len - 1) / double(r)) / n_irred_lb;
        if (bias_bound <= beta) break;
    }
    fam.lfsr_degree_ = r;
    fam.feedback_polys_ = irreducible_polys_gf2(r);
    fam.size_ = std::uint64_t(fam.feedback_polys_.size()) << r;

    // code words: bit blocks of (y^j, j < k_bits) with y = position in GF(2^b)
    Gf2k code_field(b);
    fam.code_words_.resize(positions);
    for (std::uint64_t pos = 0; pos < positions; ++pos) {
        std::uint64_t word = 0;
        std::uint32_t p = 1;
        for (unsigned j = 0; j < k_bits; ++j) {
            word |= std::uint64_t(p) << (j * b);
            p = code_field.mul(p, std::uint32_t(pos));
        }
        fam.code_words_[pos] = word;
    }
    return fam;
}

std::uint64_t FunctionFamily::eval(std::uint64_t member, std::uint64_t x) const {
    if (member >= size_) throw std::out_of_range("family member index out of range");
    if (x >= n_) throw std::out_of_range("family point out of range");
    switch (kind_) {
    case FamilyKind::ExactPoly: {
        Gf2k field(field_degree_);
        const std::uint64_t order = field.order();
        std::uint32_t acc = 0;
        // Horner over base-order digits of the index, most significant first;
        // the least significant digit is the constant coefficient.
        std::uint64_t idx = member;
        std::uint32_t coeff[64];
        unsigned nc = 0;
        for (unsigned i = 0; i < k_; ++i) {
            coeff[nc++] = std::uint32_t(idx % order);
            idx /= order;
        }
        for (unsigned i = nc; i-- > 0;) acc = field.mul(acc, std::uint32_t(x)) ^ coeff[i];
        return acc >> shift_;
    }
    case FamilyKind::BinaryExact: {
        const unsigned kbits = field_degree_;
        unsigned bit = unsigned(member & 1);
        std::uint64_t idx = member >> 1;
        for (unsigned u = 0; u < n_powers_; ++u) {
            const std::uint32_t s = std::uint32_t(idx & ((std::uint64_t(1) << kbits) - 1));
            idx >>= kbits;
            bit ^= parity64(std::uint64_t(s) & power_table_[std::size_t(u) * n_ + x]);
        }
        return bit;
    }
    case FamilyKind::DeltaDependent: {
        const std::uint64_t st = member & ((std::uint64_t(1) << lfsr_degree_) - 1);
        const std::uint32_t q = feedback_polys_[std::size_t(member >> lfsr_degree_)];
        // LFSR stream: bit i = <start state, x^i mod q>
        std::uint64_t stream = 0;
        std::uint32_t cur = 1;
        const std::uint32_t mask = (std::uint32_t(1) << lfsr_degree_) - 1;
        for (unsigned i = 0; i < code_len_; ++i) {
            stream |= std::uint64_t(parity64(st & cur)) << i;
            cur <<= 1;
            if (cur >> lfsr_degree_ & 1) cur = (cur ^ q) & mask;
        }
        std::uint64_t value = 0;
        for (unsigned u = 0; u < bits_per_point_; ++u) {
            const std::uint64_t code = code_words_[std::size_t(x) * bits_per_point_ + u];
            value |= std::uint64_t(parity64(stream & code)) << (bits_per_point_ - 1 - u);
        }
        return value;
    }
    }
    throw std::logic_error("unreachable");
}

double family_bias(std::uint64_t n, std::uint64_t m, std::uint64_t member_count,
                   const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& eval,
                   unsigned k, std::uint64_t budget) {
    if (k < 1 || std::uint64_t(k) > n) throw std::invalid_argument("family_bias: need 1 <= k <= N");
    std::uint64_t n_subsets = 1;
    for (unsigned i = 0; i < k; ++i) n_subsets = n_subsets * (n - i) / (i + 1);
    std::uint64_t tuples = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (tuples > budget / m) throw std::invalid_argument("family_bias: budget exceeded");
        tuples *= m;
    }
    if (n_subsets > budget / std::max<std::uint64_t>(member_count, 1) ||
        n_subsets * member_count > budget)
        throw std::invalid_argument("family_bias: budget exceeded");

    std::vector<std::uint64_t> counts(tuples);
    std::vector<std::uint64_t> points(k);
    for (unsigned i = 0; i < k; ++i) points[i] = i;
    double worst = 0.0;
    const double uniform = 1.0 / double(tuples);
    while (true) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t s = 0; s < member_count; ++s) {
            std::uint64_t key = 0;
            for (unsigned i = 0; i < k; ++i) key = key * m + eval(s, points[i]);
            ++counts[key];
        }
        double tv = 0.0;
        for (std::uint64_t c : counts) tv += std::abs(double(c) / double(member_count) - uniform);
        worst = std::max(worst, 0.5 * tv);
        // next k-combination in lexicographic order
        int i = int(k) - 1;
        while (i >= 0 && points[i] == n - k + i) --i;
        if (i < 0) break;
        ++points[i];
        for (unsigned j = i + 1; j < k; ++j) points[j] = points[j - 1] + 1;
    }
    return worst;
}

double family_bias(const FunctionFamily& fam, unsigned k, std::uint64_t budget) {
    return family_bias(fam.domain_size(), fam.range_size(), fam.size(),
                       [&fam](std::uint64_t s, std::uint64_t x) { return fam.eval(s, x); },
                       k, budget);
}

} // namespace tdesign
