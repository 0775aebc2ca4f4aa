#include "polya/biquad.hpp"
#include "polya/errors.hpp"

#include <algorithm>

namespace polya {

namespace {

bool two_ramifies(const Int& m) { return mod_floor(m, 4) != 1; }

Factorization multiply_squarefree(const Factorization& f1, const Factorization& f2,
                                  std::vector<Int>& m3_primes) {
    // primes of m3 = squarefree part of m1*m2: symmetric difference
    std::vector<Int> p1 = f1.primes(), p2 = f2.primes();
    std::set_symmetric_difference(p1.begin(), p1.end(), p2.begin(), p2.end(),
                                  std::back_inserter(m3_primes));
    Factorization f3;
    for (const Int& p : m3_primes) f3.prime_powers.emplace_back(p, 1);
    return f3;
}

} // namespace

Int BiquadraticField::exponent_product() const {
    Int prod = 1;
    for (const auto& [p, e] : ram) prod *= e;
    return prod;
}

int BiquadraticField::e2() const {
    for (const auto& [p, e] : ram)
        if (p == 2) return e;
    return 0;
}

BiquadraticField make_biquad(const Int& m1, const Int& m2, const Factorization& f1,
                             const Factorization& f2) {
    if (m1 <= 1 || m2 <= 1)
        throw invalid_input("make_biquad: both radicands must be > 1 (totally real only)");
    if (m1 == m2) throw invalid_input("make_biquad: radicands must be distinct");
    if (!f1.is_squarefree() || !f2.is_squarefree())
        throw invalid_input("make_biquad: radicands must be squarefree");

    BiquadraticField k;
    k.m1 = m1;
    k.m2 = m2;
    std::vector<Int> m3_primes;
    Factorization f3 = multiply_squarefree(f1, f2, m3_primes);
    k.m3 = f3.value();
    if (k.m3 == m1 || k.m3 == m2 || k.m3 <= 1)
        throw internal_error("make_biquad: degenerate third subfield");

    k.k1 = make_field(m1, f1);
    k.k2 = make_field(m2, f2);
    k.k3 = make_field(k.m3, f3);

    // Odd ramified primes divide exactly two of m1, m2, m3 and carry e = 2.
    std::vector<Int> odd;
    for (const QuadraticField* f : {&k.k1, &k.k2, &k.k3})
        for (const Int& p : f->d_factors.primes())
            if (p != 2) odd.push_back(p);
    std::sort(odd.begin(), odd.end());
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2)
        if (odd[i] != odd[i + 1])
            throw internal_error("make_biquad: odd prime without its pair");
    if (odd.size() % 2 != 0)
        throw internal_error("make_biquad: odd prime multiplicity is not two");

    int count2 = int(two_ramifies(m1)) + int(two_ramifies(m2)) + int(two_ramifies(k.m3));
    if (count2 == 1)
        throw internal_error("make_biquad: 2 ramified in exactly one subfield");
    if (count2 >= 2) k.ram.emplace_back(2, count2 == 3 ? 4 : 2);
    for (std::size_t i = 0; i < odd.size(); i += 2) k.ram.emplace_back(odd[i], 2);
    return k;
}

BiquadraticField make_biquad(const Int& m1, const Int& m2) {
    if (m1 <= 1 || m2 <= 1)
        throw invalid_input("make_biquad: both radicands must be > 1 (totally real only)");
    return make_biquad(m1, m2, factor(m1), factor(m2));
}

std::array<AClassInfo, 3> subfield_a_classes(const BiquadraticField& k, const UnitBudget& budget) {
    return {a_class(k.k1, budget), a_class(k.k2, budget), a_class(k.k3, budget)};
}

H1Report h1_report_from(const BiquadraticField& k, const std::array<AClassInfo, 3>& a_infos) {
    for (const AClassInfo& info : a_infos)
        if (!info.known())
            throw invalid_input("h1_report_from: undetermined a-class");

    H1Report rep;
    rep.a_infos = a_infos;
    std::vector<SquareClass> gens = {
        SquareClass(1, k.k1.d_factors.primes()),
        SquareClass(1, k.k2.d_factors.primes()),
        SquareClass(1, k.k3.d_factors.primes()),
        a_infos[0].cls, a_infos[1].cls, a_infos[2].cls,
    };
    // [m1][m2][m3] multiply to the identity; a cheap Lemma-level sanity check.
    if (!sq_mul(sq_mul(gens[0], gens[1]), gens[2]).is_identity())
        throw internal_error("h1_report_from: discriminant classes do not cancel");
    rep.h2 = subgroup_generated(std::span<const SquareClass>(gens.data(), gens.size()));

    rep.two_totally_ramified = (k.e2() == 4);
    rep.index = 1;
    if (rep.two_totally_ramified) {
        const QuadraticField* fields[3] = {&k.k1, &k.k2, &k.k3};
        bool all_relaxed = true, all_plus = true, all_minus = true;
        for (int i = 0; i < 3; ++i) {
            rep.pm2[i] = norm_pm2_solvable(*fields[i]);
            all_relaxed = all_relaxed && (rep.pm2[i].plus2 || rep.pm2[i].minus2);
            all_plus = all_plus && rep.pm2[i].plus2;
            all_minus = all_minus && rep.pm2[i].minus2;
        }
        rep.strict_sign_agreement = all_plus || all_minus;
        rep.sign_interpretation_diverges = all_relaxed && !rep.strict_sign_agreement;
        if (all_relaxed) rep.index = 2;
    }
    rep.h1_order = Int(rep.index) << rep.h2.rank();
    return rep;
}

H1Report h1_report(const BiquadraticField& k, const UnitBudget& budget) {
    return h1_report_from(k, subfield_a_classes(k, budget));
}

PolyaOrderReport polya_order_from(const BiquadraticField& k,
                                  const std::array<AClassInfo, 3>& a_infos) {
    PolyaOrderReport rep;
    rep.h1 = h1_report_from(k, a_infos);
    rep.exponent_product = k.exponent_product();
    rep.h1_order = rep.h1.h1_order;
    if (rep.exponent_product % rep.h1_order != 0)
        throw internal_error("polya_order: |H^1| = " + rep.h1_order.str() +
                             " does not divide the exponent product " +
                             rep.exponent_product.str() + " (exactness violated)");
    rep.po_order = rep.exponent_product / rep.h1_order;

    bool all_two = std::all_of(k.ram.begin(), k.ram.end(),
                               [](const auto& pe) { return pe.second == 2; });
    if (all_two) {
        int rank = 0;
        Int v = rep.po_order;
        while (v > 1) {
            if (v % 2 != 0)
                throw internal_error("polya_order: order is not a power of two");
            v /= 2;
            ++rank;
        }
        rep.rank2 = rank;
    }
    return rep;
}

PolyaOrderReport polya_order(const BiquadraticField& k, const UnitBudget& budget) {
    return polya_order_from(k, subfield_a_classes(k, budget));
}

BetaCertificate beta_certificate(const BiquadraticField& k, const UnitBudget& budget) {
    if (k.m1 != 2 || mod_floor(k.m2, 2) != 1)
        throw invalid_input("beta_certificate: field must be (2, P) with P odd squarefree");
    const Int P = k.m2;
    const Int D = k.m3; // 2P, = 2 (mod 4), so the K3 unit has denom 1
    if (D != 2 * P) throw internal_error("beta_certificate: m3 != 2P");

    const SquareClass two_cls(1, {Int(2)});
    const SquareClass p_cls(1, k.k2.d_factors.primes());
    const SquareClass two_p_cls = sq_mul(two_cls, p_cls);
    SquareClassSubgroup target = subgroup_generated({two_cls, p_cls});
    BetaCertificate cert;

    if (D <= budget.explicit_max_d) {
        FundamentalUnit u = fundamental_unit(k.k3, budget.explicit_max_steps);
        cert.unit_norm = u.norm;
        cert.period = u.period;
        if (u.denom != 1) throw internal_error("beta_certificate: unexpected half-integer unit");
        if (u.norm == -1) {
            cert.mode = BetaCertificate::Mode::vacuous_negative_norm;
            cert.admissible = true;
            return cert;
        }
        const Int& z = u.x;
        const Int& w = u.y;
        if (mod_floor(z, 2) != 1)
            throw internal_error("beta_certificate: z must be odd for even discriminant");
        if (mod_floor(w, 2) != 0)
            throw internal_error("beta_certificate: w must be even");
        Int w1 = w / 2;
        if (((z - 1) / 2) * ((z + 1) / 2) != 2 * w1 * w1 * P)
            throw internal_error("beta_certificate: product identity failed");
        cert.mode = BetaCertificate::Mode::explicit_unit;
        cert.z = z;
        cert.w = w;
        cert.w1 = w1;
        // (z-1)/2 and (z+1)/2 have square cofactors over the primes of 2P.
        std::vector<Int> support = k.k3.d_factors.primes();
        cert.alpha_class = squarefree_class_supported((z - 1) / 2, support);
        cert.beta_class = squarefree_class_supported((z + 1) / 2, support);
        if (sq_mul(*cert.alpha_class, *cert.beta_class) != two_p_cls)
            throw internal_error("beta_certificate: alpha*beta != [2P]");
        cert.admissible = target.contains(*cert.beta_class);
        return cert;
    }

    if (D <= budget.signature_max_d) {
        CfSignature sig = cf_signature(D, budget.signature_max_steps);
        if (sig.completed) {
            cert.unit_norm = sig.norm_sign;
            cert.period = sig.period;
            if (sig.norm_sign == -1) {
                cert.mode = BetaCertificate::Mode::vacuous_negative_norm;
                cert.admissible = true;
                return cert;
            }
            // Half-period composition: [beta] = [Q_m] for m even, [D*Q_m] for
            // m odd (see a_class). beta itself = (z+1)/2 up to a square.
            cert.mode = BetaCertificate::Mode::central_norm;
            cert.central_q = sig.central_q;
            SquareClass beta = squarefree_part(sig.central_q); // Q_m < 2 sqrt(D), small
            if (sig.half_index % 2 == 1) beta = sq_mul(beta, two_p_cls);
            cert.beta_class = beta;
            cert.alpha_class = sq_mul(two_p_cls, beta);
            cert.admissible = target.contains(beta);
            return cert;
        }
    }
    return cert; // undetermined
}

} // namespace polya
