#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace tdesign {

// Exact rational arithmetic for the Haar oracle and quadrature moment work.
// Values stay exact until a caller converts at a comparison boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// N (N+1) ... (N+k-1)
inline BigInt rising_factorial(const BigInt& n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r *= (n + i);
    return r;
}

inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

} // namespace tdesign
