#pragma once

#include "polya/arith.hpp"
#include "polya/cf.hpp"
#include "polya/integer.hpp"
#include "polya/square_class.hpp"

#include <optional>
#include <vector>

namespace polya {

struct QuadraticField {
    Int d;                    // squarefree, not 0 or 1
    Int disc;                 // d when d = 1 (mod 4), else 4d
    std::vector<Int> ramified; // primes dividing disc, increasing
    int r = 0;                // |ramified|
    Factorization d_factors;  // factorization of |d|
};

QuadraticField make_field(const Int& d);
/// Same, with the factorization of |d| already known (large family products).
QuadraticField make_field(const Int& d, const Factorization& d_factors);

struct FundamentalUnit {
    Int x;            // unit (x + y sqrt(d)) / denom > 1, minimal
    Int y;
    int denom = 1;    // 2 only when d = 1 (mod 4) and x = y (mod 2), both odd
    int norm = 0;     // +1 or -1
    std::uint64_t period = 0;
};

/// Minimal unit > 1 of the maximal order, d > 1. Explicit coordinates; only
/// feasible while the regulator is small (period closes within max_steps).
FundamentalUnit fundamental_unit(const QuadraticField& k,
                                 std::uint64_t max_steps = kExplicitUnitMaxSteps);

/// a(K) = 1 when N(u) = -1, else N(u+1) = 2 + Tr(u); always a positive integer.
Int a_value(const QuadraticField& k, std::uint64_t max_steps = kExplicitUnitMaxSteps);

// Tiered access to unit data for fields whose units are too large to write
// down. The signature tier delivers the norm sign (period parity) and, for
// even periods over even d, the square class of a(K) via the central value.
enum class UnitDataSource { explicit_unit, cf_signature, external_criterion, undetermined };

struct UnitBudget {
    Int explicit_max_d = Int(10'000'000'000);    // full convergents below this
    std::uint64_t explicit_max_steps = kExplicitUnitMaxSteps;
    Int signature_max_d = Int(1) << 73;          // ~1e22; periods beyond are unreachable
    std::uint64_t signature_max_steps = kSignatureBudget;
};

struct UnitNormInfo {
    int sign = 0; // +1 / -1 when known, 0 when undetermined
    UnitDataSource source = UnitDataSource::undetermined;
    std::uint64_t period = 0;
    bool known() const { return sign != 0; }
};

UnitNormInfo unit_norm(const QuadraticField& k, const UnitBudget& budget = {});

struct AClassInfo {
    SquareClass cls;
    UnitDataSource source = UnitDataSource::undetermined;
    std::optional<Int> value; // exact a(K) when the unit is explicit
    bool known() const { return source != UnitDataSource::undetermined; }
};

/// Square class of a(K) in Q*/(Q*)^2. Falls back from the explicit unit to
/// the signature tier: norm -1 gives the identity class; an even period over
/// d = 2 (mod 4) gives [a] = [Q_half] or [d * Q_half] by the half-period
/// composition identity u = g^2 / N(g).
AClassInfo a_class(const QuadraticField& k, const UnitBudget& budget = {});

/// |Po(K)| by ramification count and unit norm: 2^(r-2) when d > 0 and
/// N(e) = +1, else 2^(r-1).
Int hilbert_polya_order(const QuadraticField& k, const UnitBudget& budget = {});

struct NormTwoWitness {
    Int x;
    Int y;
    int denom = 1;
    int norm = 0; // +2 or -2
};

struct NormTwoSolvability {
    bool plus2 = false;
    bool minus2 = false;
    std::optional<NormTwoWitness> witness; // present when either side is solvable
};

/// Existence of alpha in the maximal order with N(alpha) = +2 / -2, d > 1.
/// Integer solutions of x^2 - d y^2 = +-2, plus x^2 - d y^2 = +-8 with x, y
/// odd when d = 1 (mod 4). Decided by a continued-fraction value scan, with
/// an exhaustive scan below the fundamental-unit bound for small d.
NormTwoSolvability norm_pm2_solvable(const QuadraticField& k, bool want_witness = true);

} // namespace polya
