#include "tdesign/gf.hpp"

namespace tdesign {

namespace {

// Fixed irreducible polynomials over GF(2), one per extension degree.
// Entry k holds the full modulus including the x^k term.
constexpr std::uint32_t kModuli[21] = {
    0,
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x89,     // x^7 + x^3 + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
    0x20009,  // x^17 + x^3 + 1
    0x40081,  // x^18 + x^7 + 1
    0x80027,  // x^19 + x^5 + x^2 + x + 1
    0x100009, // x^20 + x^3 + 1
};

} // namespace

std::uint32_t Gf2k::modulus_for(unsigned k) {
    if (k < 1 || k > 20) throw std::invalid_argument("Gf2k: degree must be in [1,20]");
    return kModuli[k];
}

Gf2k::Gf2k(unsigned degree) : k_(degree), modulus_(modulus_for(degree)) {}

std::uint32_t Gf2k::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t acc = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    // reduce the carry-less product (degree < 2k) by the modulus
    for (int bit = 2 * int(k_) - 2; bit >= int(k_); --bit) {
        if (acc >> bit & 1) acc ^= std::uint64_t(modulus_) << (bit - int(k_));
    }
    return std::uint32_t(acc);
}

std::uint32_t Gf2k::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Gf2k::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("Gf2k: zero has no inverse");
    return pow(a, order() - 2u);
}

std::uint32_t Gf2k::eval_poly(const std::vector<std::uint32_t>& coeffs, std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = mul(acc, x) ^ *it;
    return acc;
}

namespace {
void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.degree != b.degree)
        throw std::invalid_argument("field elements live in different extensions");
}
void check_range(const FieldElement& a) {
    if (a.degree < 1 || a.degree > 20 || a.value >> a.degree)
        throw std::invalid_argument("field element out of range for its degree");
}
} // namespace

FieldElement gf_add(const FieldElement& a, const FieldElement& b) {
    check_range(a);
    check_range(b);
    check_same_field(a, b);
    return {a.value ^ b.value, a.degree};
}

FieldElement gf_mul(const FieldElement& a, const FieldElement& b) {
    check_range(a);
    check_range(b);
    check_same_field(a, b);
    Gf2k f(a.degree);
    return {f.mul(a.value, b.value), a.degree};
}

FieldElement gf_inv(const FieldElement& a) {
    check_range(a);
    Gf2k f(a.degree);
    return {f.inv(a.value), a.degree};
}

FieldElement poly_eval(const PolySpec& p, const FieldElement& x) {
    check_range(x);
    if (p.coefficients.empty()) return {0, x.degree};
    std::vector<std::uint32_t> cs;
    cs.reserve(p.coefficients.size());
    for (const auto& c : p.coefficients) {
        check_range(c);
        if (c.degree != x.degree)
            throw std::invalid_argument("polynomial coefficients and point live in different fields");
        cs.push_back(c.value);
    }
    Gf2k f(x.degree);
    return {f.eval_poly(cs, x.value), x.degree};
}

} // namespace tdesign
