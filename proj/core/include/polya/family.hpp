#pragma once

#include "polya/arith.hpp"
#include "polya/biquad.hpp"

#include <string>
#include <vector>

namespace polya {

/// Symmetric off-diagonal sign prescription eps[i][j] in {+1, -1}, 1-based.
class SignMatrix {
public:
    SignMatrix(int t, std::vector<int> upper_row_major);

    int t() const { return t_; }
    int eps(int i, int j) const;
    const std::vector<int>& upper() const { return upper_; }

    friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
    int t_;
    std::vector<int> upper_; // eps(1,2), eps(1,3), ..., eps(t-1,t)
};

/// The sufficient negative-norm patterns: odd t -> all -1; even t ->
/// eps(1,2) = -1, eps(1,i) = +1 for i > 2, eps(i,j) = -1 for 2 <= i != j.
SignMatrix trotter_pattern(int t);

/// Exact match against pattern (1) or (2); no index permutations.
bool trotter_applies(const SignMatrix& m);

struct SearchOptions {
    Int start = 2;
    std::uint64_t progression_limit = kDefaultProgressionLimit;
};

struct PrimeTuple {
    std::vector<Int> primes;            // in construction order
    std::vector<Primality> primality;   // prime vs probable_prime, per entry

    struct PairCertificate {
        int i, j;    // 1-based, i < j
        int symbol;  // jacobi(p_i, p_j), re-verified after construction
    };
    std::vector<PairCertificate> certificates;

    struct SearchStep {
        int k;                         // which prime this step found (1-based)
        std::vector<Int> residues;     // n_i (mod p_i) targets, i < k
        Int crt_remainder;             // x0
        Int crt_modulus;               // 8 p_1 ... p_{k-1}
        std::uint64_t candidates_examined;
    };
    std::vector<SearchStep> trace;

    Int product() const;
    bool all_proven_prime() const;
};

/// First prime p = 1 (mod 8) at or after start; the tuple search's base step.
ProgressionHit first_prime_1_mod_8(const Int& start,
                                   std::uint64_t limit = kDefaultProgressionLimit);

/// Lemma-style inductive search: p_1 from the base step; each subsequent p_k
/// is the smallest prime >= start in the CRT progression that forces
/// jacobi(p_i, p_k) = eps(i, k) for all i < k (quadratic reciprocity applies
/// since all p_i = 1 (mod 8)). Deterministic; certificates re-verified.
PrimeTuple find_prime_tuple(const SignMatrix& m, const SearchOptions& opts = {});

struct FamilyInstance {
    int t = 0;
    SignMatrix signs;
    PrimeTuple tuple;
    Int product;             // P = p_1 ... p_t
    BiquadraticField field;  // (2, P)
    int expected_rank;       // t - 1
};

FamilyInstance build_family_instance(int t, const SearchOptions& opts = {});

/// How a verification fact was established.
///   computed  - evaluated from exact arithmetic in this run
///   criterion - concluded from a cited sufficient criterion whose
///               hypotheses were machine-verified in this run
enum class CheckBasis { computed, criterion };

struct FamilyCheck {
    std::string name;
    bool pass = false;
    CheckBasis basis = CheckBasis::computed;
    std::string detail;
};

struct VerificationReport {
    std::vector<FamilyCheck> checks;
    bool pass = false;

    // Assembled quantities (present whenever determinable).
    Int exponent_product;
    Int h2_order;
    int h1_index = 1;
    Int h1_order;
    Int po_order;
    std::optional<int> rank2;
    BetaCertificate beta;
    UnitNormInfo k2_norm, k3_norm;

    const FamilyCheck* find(const std::string& name) const;
};

/// Runs the full checklist: (a) N(u1) = -1; (b) N(u2) = -1 consistent with
/// the sign pattern; (c) 2 not totally ramified; (d) every exponent 2 with
/// product 2^(t+1); (e) |H[2]| = 4 and index 1; (f) |Po| = 2^(t-1) with
/// 2-rank t-1; (g) admissible beta certificate. Each check records whether
/// it was computed outright or concluded from a verified criterion.
VerificationReport verify_theorem_instance(const FamilyInstance& inst,
                                           const UnitBudget& budget = {});

} // namespace polya
