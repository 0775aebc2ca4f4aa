#include "polya/cf.hpp"
#include "polya/errors.hpp"

#include <algorithm>
#include <cmath>

namespace polya {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Start state of the expansion: (0, 1) for sqrt(d), (1, 2) for (1+sqrt(d))/2.
void start_state(const Int& d, Int& p, Int& q) {
    if (d % 4 == 1) { p = 1; q = 2; }
    else            { p = 0; q = 1; }
}

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

u128 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    u128 x = n, y = (x + 1) / 2;
    while (y < x) { x = y; y = (x + n / x) / 2; }
    return x;
}

Int u128_to_int(u128 v) {
    Int hi = static_cast<u64>(v >> 64);
    return (hi << 64) | Int(static_cast<u64>(v));
}

// Symmetry-point kernel. Iterates states (P_k, Q_k); the first event decides
// the period:
//   Q_{k+1} == Q_k        => period 2k+1 (norm -1)
//   P_{k+1} == P_k, k>=1  => period 2k   (norm +1, central value Q_k)
// These are the two palindrome axes of the principal cycle; the mapping is
// cross-validated against naive full-period detection in the test suite.
template <typename U>
CfSignature signature_kernel(U d, U p, U q, u64 max_steps) {
    U s;
    if constexpr (sizeof(U) > 8) s = isqrt_u128(d); else s = isqrt_u64(d);
    CfSignature sig;
    for (u64 k = 0; k <= max_steps; ++k) {
        U a = (p + s) / q;
        U pn = a * q - p;
        U qn = (d - pn * pn) / q;
        if (qn == q) {
            sig.completed = true;
            sig.period = 2 * k + 1;
            sig.norm_sign = -1;
            sig.steps = k;
            return sig;
        }
        if (k >= 1 && pn == p) {
            sig.completed = true;
            sig.period = 2 * k;
            sig.norm_sign = +1;
            sig.half_index = k;
            if constexpr (sizeof(U) > 8) sig.central_q = u128_to_int(q);
            else sig.central_q = Int(static_cast<u64>(q));
            sig.steps = k;
            return sig;
        }
        p = pn;
        q = qn;
    }
    sig.steps = max_steps;
    return sig;
}

CfSignature signature_bigint(const Int& d, u64 max_steps) {
    Int s = isqrt(d);
    Int p, q;
    start_state(d, p, q);
    CfSignature sig;
    for (u64 k = 0; k <= max_steps; ++k) {
        Int a = (p + s) / q;
        Int pn = a * q - p;
        Int qn = (d - pn * pn) / q;
        if (qn == q) {
            sig.completed = true;
            sig.period = 2 * k + 1;
            sig.norm_sign = -1;
            sig.steps = k;
            return sig;
        }
        if (k >= 1 && pn == p) {
            sig.completed = true;
            sig.period = 2 * k;
            sig.norm_sign = +1;
            sig.half_index = k;
            sig.central_q = q;
            sig.steps = k;
            return sig;
        }
        p = pn;
        q = qn;
    }
    sig.steps = max_steps;
    return sig;
}

} // namespace

CfSignature cf_signature(const Int& d, u64 max_steps) {
    if (d <= 1) throw invalid_input("cf_signature: d must be > 1, got " + d.str());
    if (is_perfect_square(d)) throw invalid_input("cf_signature: d is a perfect square");
    Int p0, q0;
    start_state(d, p0, q0);
    if (d < (Int(1) << 62))
        return signature_kernel<u64>(to_uint64(d), to_uint64(p0), to_uint64(q0), max_steps);
    if (d < (Int(1) << 124)) {
        u128 dd = (static_cast<u128>(to_uint64(d >> 64)) << 64) |
                  static_cast<u128>(to_uint64(d & Int(UINT64_MAX)));
        return signature_kernel<u128>(dd, static_cast<u128>(to_uint64(p0)),
                                      static_cast<u128>(to_uint64(q0)), max_steps);
    }
    return signature_bigint(d, max_steps);
}

UnitComputation cf_fundamental_unit(const Int& d, u64 max_steps) {
    if (d <= 1) throw invalid_input("cf_fundamental_unit: d must be > 1");
    if (is_perfect_square(d)) throw invalid_input("cf_fundamental_unit: d is a perfect square");

    const bool omega = (d % 4 == 1);
    Int s = isqrt(d);
    Int p, q;
    start_state(d, p, q);

    Int a_prev1 = 1, a_prev2 = 0; // A_{-1}, A_{-2}
    Int b_prev1 = 0, b_prev2 = 1; // B_{-1}, B_{-2}
    Int ref_p, ref_q;
    std::uint64_t period = 0;

    for (u64 k = 0;; ++k) {
        if (k > max_steps)
            throw unit_out_of_reach("cf_fundamental_unit: period of d = " + d.str() +
                                    " did not close within " + std::to_string(max_steps) +
                                    " steps");
        Int a = (p + s) / q;
        Int ak = a * a_prev1 + a_prev2;
        Int bk = a * b_prev1 + b_prev2;
        Int pn = a * q - p;
        Int qn = (d - pn * pn) / q;
        p = pn;
        q = qn;
        if (k == 0) {
            ref_p = p;
            ref_q = q;
        } else if (p == ref_p && q == ref_q) {
            period = k; // unit closes on convergent A_{k-1} = a_prev1
            break;
        }
        a_prev2 = a_prev1; a_prev1 = ak;
        b_prev2 = b_prev1; b_prev1 = bk;
    }

    UnitComputation u;
    u.period = period;
    u.norm = (period % 2 == 0) ? +1 : -1;
    if (omega) {
        // unit = A + B*(omega - 1) = ((2A - B) + B*sqrt(d)) / 2
        u.x = 2 * a_prev1 - b_prev1;
        u.y = b_prev1;
        u.denom = 2;
        if (u.x % 2 == 0 && u.y % 2 == 0) {
            u.x /= 2;
            u.y /= 2;
            u.denom = 1;
        }
    } else {
        u.x = a_prev1;
        u.y = b_prev1;
        u.denom = 1;
    }
    if (u.x * u.x - d * u.y * u.y != Int(u.norm) * u.denom * u.denom)
        throw internal_error("cf_fundamental_unit: norm identity failed for d = " + d.str());
    return u;
}

SmallNormScan cf_small_norm_scan(const Int& d, u64 max_steps) {
    if (d <= 1) throw invalid_input("cf_small_norm_scan: d must be > 1");
    if (is_perfect_square(d)) throw invalid_input("cf_small_norm_scan: d is a perfect square");

    Int s = isqrt(d);
    Int p = 0, q = 1; // always the sqrt(d) expansion: values (-1)^k Q_k = A^2 - d B^2
    SmallNormScan scan;

    // Convergent parities repeat with period dividing 3*period (the automorph
    // in SL2(F2) has order at most 3), so three periods see every parity
    // variant of each represented value.
    unsigned a1 = 1, a2 = 0, b1 = 0, b2 = 1; // A_{k-1}, A_{k-2}, ... mod 2
    u64 limit = max_steps;
    for (u64 k = 0;; ++k) {
        if (k > limit)
            throw unit_out_of_reach("cf_small_norm_scan: exceeded " + std::to_string(limit) +
                                    " steps for d = " + d.str());
        Int a = (p + s) / q;
        unsigned a_par = static_cast<unsigned>((a & 1).convert_to<int>());
        unsigned ak_a = (a_par & a1) ^ a2; // A_k mod 2
        unsigned ak_b = (a_par & b1) ^ b2;
        Int pn = a * q - p;
        Int qn = (d - pn * pn) / q;
        // We are now at index k+1: (-1)^(k+1) Q_{k+1} is represented by the
        // convergent (A_k, B_k) whose parities are (ak_a, ak_b).
        u64 idx = k + 1;
        int sign = (idx % 2 == 0) ? +1 : -1;
        Int val = Int(sign) * qn;
        if (val == 2 && !scan.plus2) { scan.plus2 = true; scan.plus2_index = idx; }
        if (val == -2 && !scan.minus2) { scan.minus2 = true; scan.minus2_index = idx; }
        if (val == 8 && !scan.plus8_odd && ak_a == 1 && ak_b == 1) {
            scan.plus8_odd = true;
            scan.plus8_index = idx;
        }
        if (val == -8 && !scan.minus8_odd && ak_a == 1 && ak_b == 1) {
            scan.minus8_odd = true;
            scan.minus8_index = idx;
        }
        if (scan.period == 0 && qn == 1) {
            scan.period = idx;
            limit = std::min<u64>(max_steps, 3 * idx + 2);
        }
        if (scan.period != 0 && idx >= 3 * scan.period) break;
        a2 = a1; a1 = ak_a;
        b2 = b1; b1 = ak_b;
        p = pn;
        q = qn;
    }
    return scan;
}

void cf_convergent_at(const Int& d, u64 k, Int& a_out, Int& b_out) {
    Int s = isqrt(d);
    Int p = 0, q = 1;
    Int a1 = 1, a2 = 0, b1 = 0, b2 = 1;
    for (u64 i = 0; i < k; ++i) {
        Int a = (p + s) / q;
        Int ak = a * a1 + a2;
        Int bk = a * b1 + b2;
        a2 = a1; a1 = ak;
        b2 = b1; b1 = bk;
        Int pn = a * q - p;
        q = (d - pn * pn) / q;
        p = pn;
    }
    a_out = a1; // A_{k-1}
    b_out = b1; // B_{k-1}
}

} // namespace polya
