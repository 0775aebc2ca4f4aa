#include "polya/ideal_oracle.hpp"
#include "polya/errors.hpp"

#include <algorithm>
#include <tuple>

namespace polya {

namespace {

// b is defined mod 2a; canonical range (-a, a].
Int normalize_b(const Int& b, const Int& a) {
    Int two_a = 2 * a;
    Int r = mod_floor(b, two_a);
    if (r > a) r -= two_a;
    return r;
}

void check_ideal(const QuadIdeal& i) {
    if (i.a <= 0) throw invalid_input("ideal: a must be positive");
    if (mod_floor(i.b * i.b - i.disc, 4 * i.a) != 0)
        throw internal_error("ideal: b^2 != disc (mod 4a)");
}

QuadIdeal make_ideal(const Int& disc, const Int& a, const Int& b, const Rational& scale) {
    QuadIdeal i{disc, a, normalize_b(b, a), scale};
    check_ideal(i);
    return i;
}

// Floor of (p + sqrt(d)) / q for q != 0, exact. sqrt(d) irrational.
Int floor_quot(const Int& p, const Int& d, const Int& s, const Int& q) {
    (void)d;
    if (q > 0) {
        Int num = p + s;
        if (num >= 0) return num / q;
        return -Int((-num + q - 1) / q);
    }
    // floor(x/q) with q < 0: -ceil(x/(-q)) = -floor(x/(-q)) - 1, x irrational.
    Int r = -q;
    Int num = p + s; // floor(p + sqrt(d))
    Int fl = num >= 0 ? Int(num / r) : -Int((-num + r - 1) / r);
    return -fl - 1;
}

struct CfIdealState {
    Int p, q; // quadratic irrational (p + sqrt(disc)) / q, 2q | p^2 - disc
};

bool is_reduced_state(const CfIdealState& st, const Int& s) {
    return st.q > 0 && st.p > 0 && st.p <= s && s - st.p < st.q && st.q <= s + st.p;
}

CfIdealState cf_ideal_step(const CfIdealState& st, const Int& disc, const Int& s) {
    Int a = floor_quot(st.p, disc, s, st.q);
    Int pn = a * st.q - st.p;
    Int qn = (disc - pn * pn) / st.q;
    if (qn == 0) throw internal_error("ideal reduction: degenerate state (disc a square?)");
    return {pn, qn};
}

// Reduce the state, with the spec's step-count guard.
CfIdealState reduce_state(CfIdealState st, const Int& disc, const Int& s) {
    long bound = 10 * static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(st.q) + boost::multiprecision::abs(st.p) + disc) + 1) + 50;
    long steps = 0;
    while (!is_reduced_state(st, s)) {
        st = cf_ideal_step(st, disc, s);
        if (++steps > bound)
            throw internal_error("ideal reduction: exceeded step bound " + std::to_string(bound));
    }
    return st;
}

// ---- imaginary case: classical (a, b, c) form reduction ----

struct Form {
    Int a, b, c;
};

Form reduce_form_imag(Form f, const Int& disc) {
    for (;;) {
        // normalize b into (-a, a]
        Int b = normalize_b(f.b, f.a);
        Int c = (b * b - disc) / (4 * f.a);
        f.b = b;
        f.c = c;
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        if (f.b < 0 && -f.b == f.a) f.b = -f.b;
        break;
    }
    return f;
}

} // namespace

QuadIdeal unit_ideal(const QuadraticField& k) {
    Int b0 = mod_floor(k.disc, 2);
    return make_ideal(k.disc, 1, b0, 1);
}

QuadIdeal prime_ideal_above(const QuadraticField& k, const Int& p) {
    if (!std::binary_search(k.ramified.begin(), k.ramified.end(), p))
        throw invalid_input("prime_ideal_above: p = " + p.str() + " is not ramified in d = " +
                            k.d.str());
    for (int j = 0; j <= 1; ++j) {
        Int b = j * p;
        if (mod_floor(b, 2) != mod_floor(k.disc, 2)) continue;
        if (mod_floor(b * b - k.disc, 4 * p) == 0) return make_ideal(k.disc, p, b, 1);
    }
    throw internal_error("prime_ideal_above: no standard form for p = " + p.str());
}

Int ideal_norm(const QuadIdeal& i) {
    Rational n = i.scale * i.scale * Rational(i.a);
    if (boost::multiprecision::denominator(n) != 1)
        throw invalid_input("ideal_norm: non-integral ideal");
    return boost::multiprecision::numerator(n);
}

QuadIdeal ideal_mul(const QuadIdeal& i, const QuadIdeal& j) {
    if (i.disc != j.disc) throw invalid_input("ideal_mul: ideals from different fields");
    check_ideal(i);
    check_ideal(j);
    const Int& d = i.disc;

    // Lattice of pairs (u, v) meaning (u + v sqrt(d)) / 2; generators of the
    // product of the primitive parts.
    std::array<std::pair<Int, Int>, 4> gens = {{
        {2 * i.a * j.a, Int(0)},
        {i.a * j.b, i.a},
        {j.a * i.b, j.a},
        {(i.b * j.b + d) / 2, (i.b + j.b) / 2},
    }};

    // HNF: first find (u0, e) with e = gcd of v-components via Bezout folds.
    Int e = 0, u0 = 0;
    for (const auto& [u, v] : gens) {
        if (v == 0) continue;
        if (e == 0) {
            e = boost::multiprecision::abs(v);
            u0 = v < 0 ? -u : u;
            continue;
        }
        // g = x*e + y*v
        Int a0 = e, b0 = v, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b0 != 0) {
            Int qq = a0 / b0;
            Int t1 = a0 - qq * b0; a0 = b0; b0 = t1;
            Int t2 = x0 - qq * x1; x0 = x1; x1 = t2;
            Int t3 = y0 - qq * y1; y0 = y1; y1 = t3;
        }
        if (a0 < 0) { a0 = -a0; x0 = -x0; y0 = -y0; }
        u0 = x0 * u0 + y0 * u;
        e = a0;
    }
    if (e == 0) throw internal_error("ideal_mul: rank-deficient product lattice");

    // Clear v-components; the residual u-components generate the (alpha, 0) line.
    Int alpha = 0;
    for (const auto& [u, v] : gens) {
        Int ured = u - (v / e) * u0;
        alpha = boost::multiprecision::gcd(alpha, ured);
    }
    if (alpha == 0) throw internal_error("ideal_mul: degenerate product lattice");

    if (alpha % (2 * e) != 0 || u0 % e != 0)
        throw internal_error("ideal_mul: product is not an ideal of the maximal order");
    Int a3 = alpha / (2 * e);
    Int b3 = u0 / e;
    return make_ideal(d, a3, b3, i.scale * j.scale * Rational(e));
}

std::vector<std::pair<Int, Int>> reduced_cycle(const QuadIdeal& i) {
    if (i.disc <= 0) throw invalid_input("reduced_cycle: requires disc > 0");
    check_ideal(i);
    Int s = isqrt(i.disc);

    CfIdealState st = reduce_state({i.b, 2 * i.a}, i.disc, s);
    // Walk the cycle of reduced states; all have even positive q, giving
    // ideals (q/2, p).
    std::vector<std::pair<Int, Int>> cyc;
    CfIdealState cur = st;
    std::uint64_t guard = 0;
    do {
        if (cur.q % 2 != 0)
            throw internal_error("reduced_cycle: odd q on cycle");
        cyc.emplace_back(cur.q / 2, cur.p); // (a, b)
        cur = cf_ideal_step(cur, i.disc, s);
        if (!is_reduced_state(cur, s))
            throw internal_error("reduced_cycle: left the reduced domain");
        if (++guard > 100'000'000)
            throw internal_error("reduced_cycle: cycle failed to close");
    } while (!(cur.p == st.p && cur.q == st.q));

    auto least = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), least, cyc.end());
    return cyc;
}

bool is_principal(const QuadIdeal& i) {
    check_ideal(i);
    if (i.disc < 0) {
        Form f = reduce_form_imag({i.a, i.b, (i.b * i.b - i.disc) / (4 * i.a)}, i.disc);
        return f.a == 1;
    }
    // Wide equivalence via cycle identity.
    std::vector<std::pair<Int, Int>> cyc = reduced_cycle(i);
    // The principal cycle contains the unit ideal (a = 1); cycle comparison
    // with the canonical rotation reduces to checking the least element.
    return cyc.front().first == 1;
}

PolyaDirectReport polya_direct(const QuadraticField& k) {
    if (k.r > 20)
        throw invalid_input("polya_direct: " + std::to_string(k.r) +
                            " ramified primes exceeds the combinatorial guard (20)");

    std::vector<QuadIdeal> primes;
    primes.reserve(k.r);
    for (const Int& p : k.ramified) primes.push_back(prime_ideal_above(k, p));

    PolyaDirectReport rep;
    const std::uint32_t n = std::uint32_t{1} << k.r;
    for (std::uint32_t mask = 0; mask < n; ++mask) {
        QuadIdeal prod = unit_ideal(k);
        for (int bit = 0; bit < k.r; ++bit)
            if (mask & (std::uint32_t{1} << bit)) prod = ideal_mul(prod, primes[bit]);
        if (is_principal(prod)) rep.principal_subsets.push_back(mask);
    }
    if (n % rep.principal_subsets.size() != 0)
        throw internal_error("polya_direct: principal subset count does not divide 2^r");
    rep.order = Int(n) / Int(rep.principal_subsets.size());
    return rep;
}

} // namespace polya
