#include <doctest.h>

#include <polya/biquad.hpp>
#include <polya/errors.hpp>

using namespace polya;

TEST_CASE("make_biquad: examples") {
    BiquadraticField a = make_biquad(2, 3);
    CHECK(a.m3 == 6);
    CHECK(a.e2() == 4); // 2 ramifies in sqrt(2), sqrt(3), sqrt(6)
    CHECK(a.exponent_product() == 8);

    BiquadraticField b = make_biquad(2, 17);
    CHECK(b.m3 == 34);
    CHECK(b.e2() == 2); // 17 = 1 (mod 4): unramified in sqrt(17)
    CHECK(b.exponent_product() == 4);

    BiquadraticField c = make_biquad(6, 10);
    CHECK(c.m3 == 15); // 60 = 15 * 2^2
    CHECK(c.e2() == 4);

    CHECK_THROWS_AS(make_biquad(2, 2), invalid_input);
    CHECK_THROWS_AS(make_biquad(4, 3), invalid_input);
    CHECK_THROWS_AS(make_biquad(-2, 3), invalid_input);
    CHECK_THROWS_AS(make_biquad(2, 0), invalid_input);
}

TEST_CASE("odd ramified primes carry e = 2 and divide exactly two radicands") {
    for (auto [m1, m2] : {std::pair<int, int>{2, 3}, {3, 5}, {6, 10}, {15, 21}, {2, 4097}}) {
        BiquadraticField k = make_biquad(m1, m2);
        for (const auto& [p, e] : k.ram) {
            if (p == 2) continue;
            CHECK(e == 2);
            int divides = int(k.m1 % p == 0) + int(k.m2 % p == 0) + int(k.m3 % p == 0);
            CHECK(divides == 2);
        }
    }
}

TEST_CASE("h2 generators: (2,3) pipeline") {
    BiquadraticField k = make_biquad(2, 3);
    auto a_infos = subfield_a_classes(k);
    REQUIRE(a_infos[0].known());
    CHECK(*a_infos[0].value == 1);  // a(2) = 1, negative norm
    CHECK(*a_infos[1].value == 6);  // a(3) = 6
    CHECK(*a_infos[2].value == 12); // a(6) = 12 ~ [3]
    CHECK(a_infos[2].cls.value() == 3);

    H1Report rep = h1_report_from(k, a_infos);
    CHECK(rep.h2.rank() == 2);
    CHECK(rep.h2.order() == 4); // <[2],[3]>
    CHECK(rep.two_totally_ramified);
    CHECK(rep.index == 2); // witnesses sqrt(2), 1+sqrt(3), 2+sqrt(6)
    CHECK(rep.h1_order == 8);
    CHECK_FALSE(rep.sign_interpretation_diverges); // all three represent -2
}

TEST_CASE("h2 generators: (2,5) pipeline") {
    BiquadraticField k = make_biquad(2, 5);
    auto a_infos = subfield_a_classes(k);
    CHECK(*a_infos[0].value == 1); // units of 2, 5, 10 all have norm -1
    CHECK(*a_infos[1].value == 1);
    CHECK(*a_infos[2].value == 1);
    H1Report rep = h1_report_from(k, a_infos);
    CHECK(rep.h2.order() == 4);
    CHECK_FALSE(rep.two_totally_ramified); // e_2 = 2
    CHECK(rep.index == 1);
    CHECK(rep.h1_order == 4);
}

TEST_CASE("h1 index examples: (3,5) has index 1") {
    BiquadraticField k = make_biquad(3, 5);
    CHECK(k.e2() == 2); // 2 unramified in Q(sqrt(5)), disc 5
    H1Report rep = h1_report(k);
    CHECK(rep.index == 1);
}

TEST_CASE("polya_order: known Polya fields and the t = 2 instance") {
    PolyaOrderReport a = polya_order(make_biquad(2, 3));
    CHECK(a.exponent_product == 8);
    CHECK(a.h1_order == 8);
    CHECK(a.po_order == 1);
    CHECK_FALSE(a.rank2); // e_2 = 4: rank undefined

    PolyaOrderReport b = polya_order(make_biquad(2, 5));
    CHECK(b.exponent_product == 4);
    CHECK(b.h1_order == 4);
    CHECK(b.po_order == 1);
    CHECK(b.rank2);
    CHECK(*b.rank2 == 0);

    PolyaOrderReport c = polya_order(make_biquad(2, 17));
    CHECK(c.po_order == 1); // a(34) = 72 ~ [2]

    PolyaOrderReport d = polya_order(make_biquad(2, 4097));
    CHECK(d.exponent_product == 8); // primes 2, 17, 241, each e = 2
    CHECK(d.h1_order == 4);
    CHECK(d.po_order == 2);
    REQUIRE(d.rank2);
    CHECK(*d.rank2 == 1);
}

TEST_CASE("exactness: h1 divides the exponent product across a sweep") {
    for (auto [m1, m2] : {std::pair<int, int>{2, 3},  {2, 5},  {2, 7},  {2, 11}, {2, 13},
                          {2, 17},                    {3, 5},  {3, 7},  {5, 7},  {5, 13},
                          {6, 10},                    {7, 11}, {10, 15}, {13, 17}, {15, 21}}) {
        BiquadraticField k = make_biquad(m1, m2);
        PolyaOrderReport rep = polya_order(k); // throws internal_error on violation
        CHECK(rep.po_order >= 1);
        CHECK(rep.exponent_product == rep.po_order * rep.h1_order);
    }
}

TEST_CASE("beta certificate: explicit cases") {
    // (2, 3): u(sqrt(6)) = 5 + 2 sqrt(6), z = 5, beta = sqfree(3) = 3 = P
    BetaCertificate c = beta_certificate(make_biquad(2, 3));
    CHECK(c.mode == BetaCertificate::Mode::explicit_unit);
    REQUIRE(c.z);
    CHECK(*c.z == 5);
    CHECK(*c.w == 2);
    CHECK(*c.w1 == 1);
    CHECK(c.alpha_class->value() == 2);
    CHECK(c.beta_class->value() == 3);
    CHECK(c.admissible);

    // (2, 5): u(sqrt(10)) = 3 + sqrt(10) has norm -1: vacuous
    BetaCertificate v = beta_certificate(make_biquad(2, 5));
    CHECK(v.mode == BetaCertificate::Mode::vacuous_negative_norm);
    CHECK(v.admissible);

    // (2, 4097): z = 136333746755, beta = 2
    BetaCertificate f = beta_certificate(make_biquad(2, 4097));
    CHECK(f.mode == BetaCertificate::Mode::explicit_unit);
    CHECK(*f.z == Int("136333746755"));
    CHECK(f.beta_class->value() == 2);
    CHECK(f.alpha_class->value() == 4097);
    CHECK(f.admissible);

    CHECK_THROWS_AS(beta_certificate(make_biquad(3, 5)), invalid_input);
}

TEST_CASE("beta certificate: central-norm tier matches the explicit route") {
    UnitBudget tight;
    tight.explicit_max_d = 100;
    BetaCertificate central = beta_certificate(make_biquad(2, 4097), tight);
    CHECK(central.mode == BetaCertificate::Mode::central_norm);
    CHECK(central.beta_class->value() == 2);
    CHECK(central.admissible);

    BetaCertificate central3 = beta_certificate(make_biquad(2, 9902449), tight);
    BetaCertificate explicit3 = beta_certificate(make_biquad(2, 9902449));
    CHECK(central3.mode == BetaCertificate::Mode::central_norm);
    CHECK(explicit3.mode == BetaCertificate::Mode::explicit_unit);
    CHECK(*central3.beta_class == *explicit3.beta_class);
    CHECK(central3.admissible == explicit3.admissible);
}

TEST_CASE("undetermined certificate under a zero budget") {
    UnitBudget none;
    none.explicit_max_d = 0;
    none.signature_max_d = 0;
    BetaCertificate c = beta_certificate(make_biquad(2, 3), none);
    CHECK(c.mode == BetaCertificate::Mode::undetermined);
    CHECK_FALSE(c.admissible);
}
