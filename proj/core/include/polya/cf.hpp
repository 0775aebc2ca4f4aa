#pragma once

#include "polya/integer.hpp"

#include <cstdint>

namespace polya {

// Continued-fraction engine for real quadratic units. Two expansions cover
// the maximal order: sqrt(d) for d = 2,3 (mod 4) and (1+sqrt(d))/2 for
// d = 1 (mod 4). All state arithmetic is exact.

struct UnitComputation {
    Int x;               // unit is (x + y*sqrt(d)) / denom, > 1
    Int y;
    int denom = 1;       // 1, or 2 when d = 1 (mod 4) and x, y are both odd
    int norm = 0;        // (x^2 - d y^2) / denom^2, always +1 or -1
    std::uint64_t period = 0;
};

inline constexpr std::uint64_t kExplicitUnitMaxSteps = 20'000'000;

/// Fundamental unit of the maximal order of Q(sqrt(d)), d > 1 squarefree,
/// by expanding sqrt(d) or (1+sqrt(d))/2 and accumulating convergents.
/// Throws unit_out_of_reach if the period does not close within max_steps.
UnitComputation cf_fundamental_unit(const Int& d,
                                    std::uint64_t max_steps = kExplicitUnitMaxSteps);

struct CfSignature {
    bool completed = false;
    std::uint64_t period = 0;
    int norm_sign = 0;          // (-1)^period when completed
    std::uint64_t half_index = 0; // period/2 when the period is even
    Int central_q;              // Q_{period/2} when the period is even
    std::uint64_t steps = 0;    // states actually visited
};

inline constexpr std::uint64_t kSignatureBudget = 2'000'000'000;

/// Period parity (hence fundamental-unit norm sign) and, for even periods,
/// the central value Q_{period/2}, found at the palindrome symmetry point of
/// the expansion. Runs in O(period/2) word operations without convergents,
/// so it scales to discriminants far beyond explicit-unit reach.
CfSignature cf_signature(const Int& d, std::uint64_t max_steps = kSignatureBudget);

/// Representation scan over the sqrt(d) expansion (order Z[sqrt(d)]): which
/// of x^2 - d y^2 = +2, -2, +8, -8 have coprime solutions, with convergent
/// parities tracked for the +-8 cases. Valid for |target| < sqrt(d); callers
/// fall back to exhaustive search below that.
struct SmallNormScan {
    bool plus2 = false, minus2 = false;
    bool plus8_odd = false, minus8_odd = false;   // x, y both odd
    std::uint64_t plus2_index = 0, minus2_index = 0;
    std::uint64_t plus8_index = 0, minus8_index = 0;
    std::uint64_t period = 0;
};
SmallNormScan cf_small_norm_scan(const Int& d, std::uint64_t max_steps = kExplicitUnitMaxSteps);

/// Convergent (A_{k-1}, B_{k-1}) of the sqrt(d) expansion; used to rebuild
/// witnesses for indices found by cf_small_norm_scan.
void cf_convergent_at(const Int& d, std::uint64_t k, Int& a_out, Int& b_out);

} // namespace polya
