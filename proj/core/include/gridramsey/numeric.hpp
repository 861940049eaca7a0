#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace gridramsey {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// n*(n-1)/2, the number of unordered pairs; 0 for n < 2.
inline Int pairs(const Int& n) {
    if (n < 2) return 0;
    return n * (n - 1) / 2;
}

inline Int ipow(Int base, std::uint64_t exp) {
    Int result = 1;
    while (exp != 0) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

inline Int pow2(std::uint64_t exp) { return Int(1) << static_cast<unsigned>(exp); }

/// c^(2^(j-1)) as an exact integer. Guards the double exponent against
/// absurd inputs (j is a grid dimension index, always tiny in practice).
inline Int color_power(const Int& c, unsigned j) {
    if (j == 0) throw std::invalid_argument("color_power: j must be >= 1");
    if (j > 63) throw std::invalid_argument("color_power: exponent 2^(j-1) too large");
    return ipow(c, std::uint64_t(1) << (j - 1));
}

inline Int floor_rat(const Rat& q) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);  // always > 0
    if (num >= 0) return num / den;
    return -(((-num) + den - 1) / den);
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

/// floor(a/b) for integers, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
    if (a >= 0) return a / b;
    return -(((-a) + b - 1) / b);
}

/// Rational enclosure lo < e < hi of Napier's constant from the Taylor
/// series partial sum: sum_{k<=n} 1/k! < e < sum + 1/(n!*n).
inline std::pair<Rat, Rat> napier_enclosure(unsigned terms) {
    if (terms < 2) terms = 2;
    Int factorial = 1;
    Rat lo = 1;  // k = 0 term
    for (unsigned k = 1; k <= terms; ++k) {
        factorial *= k;
        lo += Rat(Int(1), factorial);
    }
    Rat hi = lo + Rat(Int(1), factorial * terms);
    return {lo, hi};
}

}  // namespace gridramsey
