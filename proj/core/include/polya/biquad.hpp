#pragma once

#include "polya/quad_field.hpp"
#include "polya/square_class.hpp"

#include <array>
#include <optional>
#include <vector>

namespace polya {

/// Totally real bi-quadratic field Q(sqrt(m1), sqrt(m2)) with its three
/// quadratic subfields and ramification exponents. Every odd ramified prime
/// has e = 2; e_2 is 4 when 2 ramifies in all three subfields, 2 when in
/// exactly two.
struct BiquadraticField {
    Int m1, m2, m3;
    QuadraticField k1, k2, k3;
    std::vector<std::pair<Int, int>> ram; // (prime, exponent), increasing primes

    Int exponent_product() const;
    int e2() const; // 0 when 2 is unramified
};

BiquadraticField make_biquad(const Int& m1, const Int& m2);
BiquadraticField make_biquad(const Int& m1, const Int& m2, const Factorization& f1,
                             const Factorization& f2);

/// a-classes of the three subfields under the given budget; entries may come
/// back undetermined for units beyond computational reach.
std::array<AClassInfo, 3> subfield_a_classes(const BiquadraticField& k,
                                             const UnitBudget& budget = {});

struct H1Report {
    SquareClassSubgroup h2;        // generated by [m1],[m2],[m3],[a1],[a2],[a3]
    int index = 1;                 // of H[2] in H^1; 2 only when 2 is totally
                                   // ramified and all subfields represent +-2
    Int h1_order;                  // index * |H[2]|
    bool two_totally_ramified = false;
    std::array<NormTwoSolvability, 3> pm2; // populated when e_2 = 4
    bool strict_sign_agreement = false;    // all three share one sign of +-2
    bool sign_interpretation_diverges = false;
    std::array<AClassInfo, 3> a_infos;
};

/// Lemma-style H^1 order from explicitly resolved a-classes. Throws
/// invalid_input if any entry is undetermined.
H1Report h1_report_from(const BiquadraticField& k, const std::array<AClassInfo, 3>& a_infos);
H1Report h1_report(const BiquadraticField& k, const UnitBudget& budget = {});

struct PolyaOrderReport {
    Int exponent_product;
    Int h1_order;
    Int po_order;             // exponent_product / h1_order
    std::optional<int> rank2; // log2(po_order) when every exponent is 2
    H1Report h1;
};

PolyaOrderReport polya_order_from(const BiquadraticField& k,
                                  const std::array<AClassInfo, 3>& a_infos);
PolyaOrderReport polya_order(const BiquadraticField& k, const UnitBudget& budget = {});

/// The factorization certificate behind [a3] for fields (2, P): for a
/// norm +1 unit z + w sqrt(2P), z is odd, w = 2 w1, and
/// ((z-1)/2)((z+1)/2) = 2 w1^2 P splits into coprime halves a^2*alpha and
/// b^2*beta with alpha*beta = 2P. Admissible when [beta] lies in <[2],[P]>.
struct BetaCertificate {
    enum class Mode {
        vacuous_negative_norm, // N(u3) = -1: nothing to certify
        explicit_unit,         // z, w materialized
        central_norm,          // [beta] from Q_{l/2}; z too large to write
        undetermined,          // unit data out of reach
    };
    Mode mode = Mode::undetermined;
    int unit_norm = 0;
    std::optional<Int> z, w, w1;
    std::optional<SquareClass> alpha_class, beta_class;
    std::optional<Int> central_q;
    std::uint64_t period = 0;
    bool admissible = false;
};

BetaCertificate beta_certificate(const BiquadraticField& k, const UnitBudget& budget = {});

} // namespace polya
