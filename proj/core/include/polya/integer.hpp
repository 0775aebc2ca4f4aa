#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace polya {

// All field/ideal arithmetic is exact; no operation may silently overflow.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

// Least nonnegative residue; C++ % truncates toward zero.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += boost::multiprecision::abs(m);
    return r;
}

inline bool fits_uint64(const Int& n) {
    return n >= 0 && n <= Int(UINT64_MAX);
}

inline std::uint64_t to_uint64(const Int& n) { return n.convert_to<std::uint64_t>(); }

inline std::string to_decimal(const Int& n) { return n.str(); }

} // namespace polya
