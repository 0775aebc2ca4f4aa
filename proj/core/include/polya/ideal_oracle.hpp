#pragma once

#include "polya/integer.hpp"
#include "polya/quad_field.hpp"

#include <cstdint>
#include <vector>

namespace polya {

// Ground-truth ideal arithmetic, independent of the unit/ramification
// formulas it is used to check. Ideals are kept in standard form
//   scale * ( a Z + (b + sqrt(disc))/2 Z ),  a = norm of the primitive part,
// with b normalized into (-a, a] and b^2 = disc (mod 4a).
struct QuadIdeal {
    Int disc;
    Int a;
    Int b;
    Rational scale = 1;

    friend bool operator==(const QuadIdeal& x, const QuadIdeal& y) = default;
};

QuadIdeal unit_ideal(const QuadraticField& k);

/// The unique prime ideal of norm p over a ramified prime p | disc.
QuadIdeal prime_ideal_above(const QuadraticField& k, const Int& p);

/// Product in standard form (module Hermite normal form of the four
/// generator products). Rejects ideals from different fields.
QuadIdeal ideal_mul(const QuadIdeal& i, const QuadIdeal& j);

Int ideal_norm(const QuadIdeal& i); // norm of scale * primitive part as integer when integral

/// Cycle of reduced ideals equivalent to I (disc > 0), rotated so the
/// lexicographically least (a, b) state comes first. Two reduced ideals are
/// equivalent in the (wide) class group iff they lie on the same cycle.
std::vector<std::pair<Int, Int>> reduced_cycle(const QuadIdeal& i);

/// Wide-equivalence principality test: form reduction for disc < 0, cycle
/// identity for disc > 0.
bool is_principal(const QuadIdeal& i);

struct PolyaDirectReport {
    Int order;
    std::vector<std::uint32_t> principal_subsets; // sorted bitmasks over `ramified`
};

/// Direct Polya group order: enumerate all subsets of ramified primes, test
/// principality of each product, and divide 2^r by the count of principal
/// products. Refuses r > 20.
PolyaDirectReport polya_direct(const QuadraticField& k);

} // namespace polya
