#include <doctest.h>

#include <polya/errors.hpp>
#include <polya/family.hpp>

using namespace polya;

TEST_CASE("trotter_pattern: pinned shapes") {
    SignMatrix t3 = trotter_pattern(3);
    CHECK(t3.upper() == std::vector<int>{-1, -1, -1});

    SignMatrix t2 = trotter_pattern(2);
    CHECK(t2.upper() == std::vector<int>{-1});

    SignMatrix t4 = trotter_pattern(4);
    // eps(1,2), eps(1,3), eps(1,4), eps(2,3), eps(2,4), eps(3,4)
    CHECK(t4.upper() == std::vector<int>{-1, 1, 1, -1, -1, -1});
    CHECK(t4.eps(3, 1) == 1); // symmetric accessor

    CHECK_THROWS_AS(trotter_pattern(1), invalid_input);
}

TEST_CASE("trotter_applies: exact match only") {
    CHECK(trotter_applies(trotter_pattern(5)));
    CHECK(trotter_applies(trotter_pattern(6)));

    SignMatrix almost(3, {-1, 1, -1});
    CHECK_FALSE(trotter_applies(almost));

    // pattern (2) with indices 1 and 2 swapped is not accepted
    SignMatrix swapped(4, {-1, -1, -1, 1, 1, -1});
    CHECK_FALSE(trotter_applies(swapped));
}

TEST_CASE("first_prime_1_mod_8 base step") {
    CHECK(first_prime_1_mod_8(2).prime == 17);
    CHECK(first_prime_1_mod_8(18).prime == 41);
}

TEST_CASE("find_prime_tuple: pinned t = 2 searches") {
    PrimeTuple minus = find_prime_tuple(SignMatrix(2, {-1}));
    CHECK(minus.primes == std::vector<Int>{17, 241});
    REQUIRE(minus.trace.size() == 2);
    CHECK(minus.trace[1].residues == std::vector<Int>{3}); // least non-residue mod 17
    CHECK(minus.trace[1].crt_remainder == 105);
    CHECK(minus.trace[1].crt_modulus == 136);
    CHECK(minus.all_proven_prime());

    PrimeTuple plus = find_prime_tuple(SignMatrix(2, {1}));
    CHECK(plus.primes == std::vector<Int>{17, 137}); // 137 = 1 (mod 136)
    CHECK(plus.trace[1].residues == std::vector<Int>{1});
}

TEST_CASE("find_prime_tuple: determinism and restart disjointness") {
    SignMatrix m = trotter_pattern(3);
    PrimeTuple a = find_prime_tuple(m);
    PrimeTuple b = find_prime_tuple(m);
    CHECK(a.primes == b.primes);
    CHECK(a.primes == std::vector<Int>{17, 241, 2417});

    Int restart = 1;
    for (const Int& p : a.primes) restart = std::max(restart, Int(p + 1));
    PrimeTuple c = find_prime_tuple(m, {restart, kDefaultProgressionLimit});
    for (const Int& p : c.primes) {
        CHECK(p >= restart);
        for (const Int& q : a.primes) CHECK(p != q);
    }
}

TEST_CASE("find_prime_tuple: certificates are re-verified symbols") {
    SignMatrix m(3, {-1, 1, -1});
    PrimeTuple t = find_prime_tuple(m);
    for (const auto& cert : t.certificates) {
        CHECK(jacobi(t.primes[cert.i - 1], t.primes[cert.j - 1]) == cert.symbol);
        CHECK(cert.symbol == m.eps(cert.i, cert.j));
    }
    for (const Int& p : t.primes) CHECK(mod_floor(p, 8) == 1);
}

TEST_CASE("find_prime_tuple: exhaustion names the failing index") {
    try {
        find_prime_tuple(trotter_pattern(2), {Int(2), 1});
        FAIL("expected search_exhausted");
    } catch (const search_exhausted& e) {
        CHECK(std::string(e.what()).find("index") != std::string::npos);
    }
}

TEST_CASE("build_family_instance: t = 2 gives (2, 4097)") {
    FamilyInstance inst = build_family_instance(2);
    CHECK(inst.product == 4097);
    CHECK(inst.field.m1 == 2);
    CHECK(inst.field.m2 == 4097);
    CHECK(inst.field.m3 == 8194);
    CHECK(inst.expected_rank == 1);
    CHECK_THROWS_AS(build_family_instance(1), invalid_input);
}

TEST_CASE("verify_theorem_instance: t = 2 passes every check computed") {
    FamilyInstance inst = build_family_instance(2);
    VerificationReport rep = verify_theorem_instance(inst);
    CHECK(rep.pass);
    CHECK(rep.po_order == 2);
    REQUIRE(rep.rank2);
    CHECK(*rep.rank2 == 1);
    CHECK(rep.h2_order == 4);
    CHECK(rep.h1_index == 1);
    for (const FamilyCheck& c : rep.checks) {
        CHECK(c.pass);
        CHECK(c.basis == CheckBasis::computed);
    }
    CHECK(rep.beta.mode == BetaCertificate::Mode::explicit_unit);
}

TEST_CASE("verify_theorem_instance: criterion tier under a zero budget") {
    FamilyInstance inst = build_family_instance(2);
    // Keep k1 = Q(sqrt(2)) reachable, push k2 and k3 beyond both tiers.
    UnitBudget none;
    none.explicit_max_d = 2;
    none.signature_max_d = 2;
    VerificationReport rep = verify_theorem_instance(inst, none);
    CHECK(rep.pass);
    const FamilyCheck* b = rep.find("k2_unit_norm");
    REQUIRE(b);
    CHECK(b->basis == CheckBasis::criterion);
    const FamilyCheck* g = rep.find("beta_admissible");
    REQUIRE(g);
    CHECK(g->basis == CheckBasis::criterion);
    CHECK(rep.po_order == 2); // order still pinned by the exact sequence
}

TEST_CASE("verify_theorem_instance: wrong instances fail loudly") {
    // Hand-built field (2, 15): 3, 5 are not 1 (mod 8) and the symbols do not
    // match the pattern; the report must say which checks break.
    FamilyInstance bogus{
        2,
        trotter_pattern(2),
        PrimeTuple{{3, 5}, {Primality::prime, Primality::prime}, {}, {}},
        15,
        make_biquad(2, 15),
        1,
    };
    VerificationReport rep = verify_theorem_instance(bogus);
    CHECK_FALSE(rep.pass);
    const FamilyCheck* t = rep.find("tuple_certificates");
    REQUIRE(t);
    CHECK_FALSE(t->pass);
    const FamilyCheck* b = rep.find("k2_unit_norm");
    REQUIRE(b);
    CHECK_FALSE(b->pass); // u(sqrt(15)) = 4 + sqrt(15) has norm +1
}

TEST_CASE("monotone restarts witness disjoint instances") {
    FamilyInstance first = build_family_instance(2);
    Int restart = 1;
    for (const Int& p : first.tuple.primes) restart = std::max(restart, Int(p + 1));
    FamilyInstance second = build_family_instance(2, {restart, kDefaultProgressionLimit});
    for (const Int& p : second.tuple.primes)
        for (const Int& q : first.tuple.primes) CHECK(p != q);
    VerificationReport rep = verify_theorem_instance(second);
    CHECK(rep.pass);
}
