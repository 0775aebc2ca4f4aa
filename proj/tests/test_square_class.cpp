#include <doctest.h>

#include <polya/arith.hpp>
#include <polya/errors.hpp>
#include <polya/square_class.hpp>

#include <random>
#include <set>

using namespace polya;

namespace {

// Brute-force subgroup: all subset products of the generators.
std::set<Int> subset_products(const std::vector<SquareClass>& gens) {
    std::set<Int> values;
    const std::size_t n = gens.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        SquareClass prod;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) prod = sq_mul(prod, gens[i]);
        values.insert(prod.value());
    }
    return values;
}

std::vector<SquareClass> random_generators(std::mt19937_64& rng) {
    static const std::vector<Int> small_primes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                  29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                  67, 71, 73, 79, 83, 89, 97};
    std::vector<SquareClass> gens;
    int count = 1 + int(rng() % 6);
    for (int g = 0; g < count; ++g) {
        std::vector<Int> primes;
        for (const Int& p : small_primes)
            if (rng() % 5 == 0) primes.push_back(p);
        int sign = (rng() % 2 == 0) ? 1 : -1;
        gens.emplace_back(sign, std::move(primes));
    }
    return gens;
}

} // namespace

TEST_CASE("square class construction and value") {
    SquareClass id = SquareClass::identity();
    CHECK(id.value() == 1);
    CHECK(SquareClass(-1, {3}).value() == -3);
    CHECK_THROWS_AS(SquareClass(1, {3, 3}), invalid_input);
    CHECK_THROWS_AS(SquareClass(1, {5, 3}), invalid_input);
    CHECK_THROWS_AS(SquareClass(2, {3}), invalid_input);
}

TEST_CASE("sq_mul examples") {
    SquareClass two(1, {2}), three(1, {3});
    CHECK(sq_mul(two, two).is_identity());          // order <= 2
    CHECK(sq_mul(two, three).value() == 6);         // disjoint supports
    SquareClass six(1, {2, 3}), ten(1, {2, 5});
    CHECK(sq_mul(six, ten).value() == 15);          // 60 = 15 * 2^2
}

TEST_CASE("sq_mul algebra on random triples") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto gens = random_generators(rng);
        if (gens.size() < 3) continue;
        const SquareClass &a = gens[0], &b = gens[1], &c = gens[2];
        CHECK(sq_mul(a, b) == sq_mul(b, a));
        CHECK(sq_mul(sq_mul(a, b), c) == sq_mul(a, sq_mul(b, c)));
        CHECK(sq_mul(a, a).is_identity());
    }
}

TEST_CASE("subgroup_generated examples") {
    SquareClassSubgroup trivial = subgroup_generated({SquareClass::identity()});
    CHECK(trivial.rank() == 0);
    CHECK(trivial.order() == 1);

    // |<[2], [P]>| = 4 for odd squarefree P > 1
    for (Int p : {Int(3), Int(15), Int(4097)}) {
        SquareClassSubgroup s =
            subgroup_generated({SquareClass(1, {2}), squarefree_part(p)});
        CHECK(s.rank() == 2);
        CHECK(s.order() == 4);
    }

    SquareClassSubgroup dep = subgroup_generated(
        {SquareClass(1, {2}), SquareClass(1, {3}), SquareClass(1, {2, 3})});
    CHECK(dep.rank() == 2); // [6] = [2][3]
}

TEST_CASE("contains examples") {
    SquareClass two(1, {2});
    SquareClassSubgroup s2p = subgroup_generated({two, SquareClass(1, {17, 241})});
    CHECK(s2p.contains(SquareClass(1, {2, 17, 241}))); // the product of the generators
    CHECK(subgroup_generated({two}).contains(SquareClass(1, {3})) == false);
    SquareClassSubgroup s = subgroup_generated({two, SquareClass(1, {3, 5})});
    CHECK(s.contains(SquareClass(1, {2, 3, 5}))); // [2][15] = [30]
    CHECK_FALSE(s.contains(SquareClass(1, {3})));
    CHECK(s.contains(SquareClass::identity()));
}

TEST_CASE("rank and membership agree with brute-force subset products") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        auto gens = random_generators(rng);
        SquareClassSubgroup s =
            subgroup_generated(std::span<const SquareClass>(gens.data(), gens.size()));
        std::set<Int> brute = subset_products(gens);
        CHECK(s.order() == Int(brute.size()));

        // membership agreement on elements inside and outside
        for (const Int& v : brute) CHECK(s.contains(squarefree_part(v)));
        SquareClass outsider(1, {101});
        CHECK(s.contains(outsider) == (brute.count(101) != 0));
        // a random product of two generators with a twist
        if (!gens.empty()) {
            SquareClass probe = sq_mul(gens[rng() % gens.size()], SquareClass(1, {7}));
            CHECK(s.contains(probe) == (brute.count(probe.value()) != 0));
        }
    }
}

TEST_CASE("basis is reduced and canonical") {
    // generating in different orders gives the same echelon basis
    std::vector<SquareClass> g1 = {SquareClass(1, {2}), SquareClass(1, {3}),
                                   SquareClass(1, {2, 3})};
    std::vector<SquareClass> g2 = {SquareClass(1, {2, 3}), SquareClass(1, {2}),
                                   SquareClass(1, {3})};
    auto s1 = subgroup_generated(std::span<const SquareClass>(g1.data(), g1.size()));
    auto s2 = subgroup_generated(std::span<const SquareClass>(g2.data(), g2.size()));
    REQUIRE(s1.rank() == s2.rank());
    for (int i = 0; i < s1.rank(); ++i) CHECK(s1.basis()[i] == s2.basis()[i]);
}
