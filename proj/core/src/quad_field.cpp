#include "polya/quad_field.hpp"
#include "polya/errors.hpp"

#include <algorithm>

namespace polya {

namespace {

QuadraticField build_field(const Int& d, Factorization f) {
    if (d == 0 || d == 1)
        throw invalid_input("make_field: d must not be 0 or 1");
    if (!f.is_squarefree())
        throw invalid_input("make_field: d = " + d.str() + " is not squarefree");

    QuadraticField k;
    k.d = d;
    k.disc = (mod_floor(d, 4) == 1) ? d : 4 * d;
    k.ramified = f.primes();
    if (mod_floor(d, 4) != 1 && (d % 2) != 0)
        k.ramified.insert(k.ramified.begin(), 2);
    k.r = static_cast<int>(k.ramified.size());
    k.d_factors = std::move(f);
    return k;
}

} // namespace

QuadraticField make_field(const Int& d) {
    if (d == 0 || d == 1)
        throw invalid_input("make_field: d must not be 0 or 1");
    return build_field(d, factor(d));
}

QuadraticField make_field(const Int& d, const Factorization& d_factors) {
    if (d_factors.value() != d)
        throw invalid_input("make_field: supplied factorization does not multiply to d");
    return build_field(d, d_factors);
}

FundamentalUnit fundamental_unit(const QuadraticField& k, std::uint64_t max_steps) {
    if (k.d <= 1) throw invalid_input("fundamental_unit: requires d > 1");
    UnitComputation u = cf_fundamental_unit(k.d, max_steps);
    return {u.x, u.y, u.denom, u.norm, u.period};
}

Int a_value(const QuadraticField& k, std::uint64_t max_steps) {
    FundamentalUnit u = fundamental_unit(k, max_steps);
    if (u.norm == -1) return 1;
    // N(u+1) = N(u) + Tr(u) + 1 = 2 + Tr(u); Tr(u) = 2x/denom is integral.
    Int a = 2 + (2 * u.x) / u.denom;
    if (a <= 0) throw internal_error("a_value: nonpositive a for d = " + k.d.str());
    return a;
}

UnitNormInfo unit_norm(const QuadraticField& k, const UnitBudget& budget) {
    if (k.d <= 1) throw invalid_input("unit_norm: requires d > 1");
    if (k.d <= budget.explicit_max_d) {
        UnitComputation u = cf_fundamental_unit(k.d, budget.explicit_max_steps);
        return {u.norm, UnitDataSource::explicit_unit, u.period};
    }
    if (k.d <= budget.signature_max_d) {
        CfSignature sig = cf_signature(k.d, budget.signature_max_steps);
        if (sig.completed)
            return {sig.norm_sign, UnitDataSource::cf_signature, sig.period};
    }
    return {};
}

AClassInfo a_class(const QuadraticField& k, const UnitBudget& budget) {
    if (k.d <= 1) throw invalid_input("a_class: requires d > 1");
    AClassInfo info;
    if (k.d <= budget.explicit_max_d) {
        Int a = a_value(k, budget.explicit_max_steps);
        // a = N(u+1) can be astronomically large, but its square class is
        // supported on 2 and the primes of d: (x-1)(x+1) = d y^2 forces even
        // multiplicity at every other prime.
        std::vector<Int> support = k.d_factors.primes();
        if (support.empty() || support.front() != 2) support.insert(support.begin(), 2);
        info.cls = squarefree_class_supported(a, support);
        info.source = UnitDataSource::explicit_unit;
        info.value = a;
        return info;
    }
    if (k.d > budget.signature_max_d) return info;
    CfSignature sig = cf_signature(k.d, budget.signature_max_steps);
    if (!sig.completed) return info;
    if (sig.norm_sign == -1) {
        info.cls = SquareClass::identity();
        info.source = UnitDataSource::cf_signature;
        return info;
    }
    // Even period. For d = 2 (mod 4) the Pell solution z + w sqrt(d) has z
    // odd, and with g = A + B sqrt(d) at the half period (N(g) = (-1)^m Q_m,
    // u = g^2/N(g)):
    //   m even: z+1 = 2A^2/Q_m  => [a] = [2(z+1)] = [Q_m]
    //   m odd:  z+1 = 2dB^2/Q_m => [a] = [d Q_m]
    if (mod_floor(k.d, 4) != 2) return info; // parity of z not forced; stay undetermined
    SquareClass q_cls = squarefree_part(sig.central_q);
    if (sig.half_index % 2 == 0) {
        info.cls = q_cls;
    } else {
        // [d] from the known factorization, no refactoring of a huge d
        info.cls = sq_mul(q_cls, SquareClass(k.d < 0 ? -1 : 1, k.d_factors.primes()));
    }
    info.source = UnitDataSource::cf_signature;
    return info;
}

Int hilbert_polya_order(const QuadraticField& k, const UnitBudget& budget) {
    int exponent;
    if (k.d > 1) {
        UnitNormInfo n = unit_norm(k, budget);
        if (!n.known())
            throw unit_out_of_reach("hilbert_polya_order: unit norm of d = " + k.d.str() +
                                    " out of reach");
        exponent = (n.sign == 1) ? k.r - 2 : k.r - 1;
    } else {
        exponent = k.r - 1;
    }
    if (exponent < 0)
        throw internal_error("hilbert_polya_order: negative exponent for d = " + k.d.str());
    return Int(1) << exponent;
}

namespace {

// Exhaustive oracle-style scan: y up to the fundamental unit's y.
NormTwoSolvability pm2_exhaustive(const QuadraticField& k, bool want_witness) {
    FundamentalUnit u = fundamental_unit(k);
    NormTwoSolvability sol;
    auto record = [&](const Int& x, const Int& y, int denom, int norm) {
        (norm > 0 ? sol.plus2 : sol.minus2) = true;
        if (want_witness && !sol.witness) sol.witness = NormTwoWitness{x, y, denom, norm};
    };
    for (Int y = 1; y <= u.y; ++y) {
        Int dy2 = k.d * y * y;
        for (int t : {2, -2}) {
            Int x2 = dy2 + t;
            if (x2 >= 0 && is_perfect_square(x2)) record(isqrt(x2), y, 1, t);
        }
        if (mod_floor(k.d, 4) == 1 && (y & 1) == 1) {
            for (int t : {8, -8}) {
                Int x2 = dy2 + t;
                if (x2 >= 0 && is_perfect_square(x2)) {
                    Int x = isqrt(x2);
                    if ((x & 1) == 1) record(x, y, 2, t / 4);
                }
            }
        }
        if (sol.plus2 && sol.minus2) break;
    }
    // y = 0 edge: x^2 = +-2 has no integer solution, nothing to scan.
    if (k.d == 2 && !sol.minus2) {
        // (0 + 1*sqrt(2)) has norm -2; the y-scan above catches it via x = 0.
    }
    return sol;
}

} // namespace

NormTwoSolvability norm_pm2_solvable(const QuadraticField& k, bool want_witness) {
    if (k.d <= 1) throw invalid_input("norm_pm2_solvable: requires d > 1");

    // The convergent-value argument needs |target| < sqrt(d); below that,
    // scan exhaustively under the fundamental-unit bound.
    if (k.d <= 100) return pm2_exhaustive(k, want_witness);

    SmallNormScan scan = cf_small_norm_scan(k.d);
    NormTwoSolvability sol;
    const bool half = (mod_floor(k.d, 4) == 1);
    sol.plus2 = scan.plus2 || (half && scan.plus8_odd);
    sol.minus2 = scan.minus2 || (half && scan.minus8_odd);
    if (want_witness && (sol.plus2 || sol.minus2)) {
        std::uint64_t idx;
        int denom, norm;
        if (scan.plus2) { idx = scan.plus2_index; denom = 1; norm = 2; }
        else if (scan.minus2) { idx = scan.minus2_index; denom = 1; norm = -2; }
        else if (scan.plus8_odd) { idx = scan.plus8_index; denom = 2; norm = 2; }
        else { idx = scan.minus8_index; denom = 2; norm = -2; }
        Int x, y;
        cf_convergent_at(k.d, idx, x, y);
        if (x * x - k.d * y * y != Int(norm) * denom * denom)
            throw internal_error("norm_pm2_solvable: witness check failed for d = " + k.d.str());
        sol.witness = NormTwoWitness{x, y, denom, norm};
    }
    return sol;
}

} // namespace polya
