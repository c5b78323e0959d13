#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tdesign {

// Arithmetic in GF(2^k), elements identified with integers {0,...,2^k-1}
// through their bit pattern. A fixed irreducible modulus per degree keeps
// every derived function family reproducible bit-for-bit across runs.
class Gf2k {
public:
    explicit Gf2k(unsigned degree);

    unsigned degree() const { return k_; }
    std::uint32_t order() const { return std::uint32_t(1) << k_; }
    std::uint32_t modulus() const { return modulus_; }

    static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const; // a != 0

    // Horner evaluation, coefficients with constant term first.
    std::uint32_t eval_poly(const std::vector<std::uint32_t>& coeffs, std::uint32_t x) const;

    // Irreducible modulus used for degree k (1 <= k <= 20).
    static std::uint32_t modulus_for(unsigned k);

private:
    unsigned k_;
    std::uint32_t modulus_; // full polynomial incl. the x^k bit
};

// Checked wrappers matching the spec-level element/poly surface.
struct FieldElement {
    std::uint32_t value = 0;
    unsigned degree = 1;
};

struct PolySpec {
    std::vector<FieldElement> coefficients; // constant term first
    unsigned degree_bound() const {
        return coefficients.empty() ? 0 : unsigned(coefficients.size() - 1);
    }
};

FieldElement gf_add(const FieldElement& a, const FieldElement& b);
FieldElement gf_mul(const FieldElement& a, const FieldElement& b);
FieldElement gf_inv(const FieldElement& a);
FieldElement poly_eval(const PolySpec& p, const FieldElement& x);

} // namespace tdesign
