#include <doctest.h>

#include "gridtest/group.hpp"
#include "gridtest/rng.hpp"

using namespace gridtest;

TEST_CASE("cyclic group arithmetic") {
    AbelianGroup z5 = AbelianGroup::cyclic(5);
    CHECK(z5.add(z5.make({2}), z5.make({4})) == z5.make({1}));
    CHECK(z5.int_mul(z5.make({2}), 7) == z5.make({4}));
    CHECK(z5.int_mul(z5.make({3}), 0) == z5.zero());
    CHECK(z5.int_mul(z5.make({3}), -1) == z5.neg(z5.make({3})));
}

TEST_CASE("product group arithmetic") {
    AbelianGroup g = AbelianGroup::parse("Z2xZ3");
    CHECK(g.descriptor() == "Z2xZ3");
    CHECK(g.size() == 6);
    CHECK(g.neg(g.make({1, 2})) == g.make({1, 1}));
    GroupElem a = g.make({1, 2});
    CHECK(g.add(a, g.zero()) == a);
    CHECK(g.add(a, g.neg(a)) == g.zero());
    CHECK(g.order_lcm() == 6);

    CHECK_THROWS_AS(AbelianGroup::parse("Q8"), Error);
    CHECK_THROWS_AS(AbelianGroup::parse("Z2x"), Error);
    CHECK_THROWS_AS(AbelianGroup::parse(""), Error);
}

TEST_CASE("int_mul by repeated addition oracle") {
    Rng rng(11);
    for (const char* desc : {"Z2", "Z5", "Z2xZ3", "Z4xZ4"}) {
        AbelianGroup g = AbelianGroup::parse(desc);
        for (int trial = 0; trial < 200; ++trial) {
            GroupElem a = g.random(rng);
            int m = (int)rng.below(41) - 20;
            GroupElem slow = g.zero();
            for (int i = 0; i < std::abs(m); ++i)
                slow = m >= 0 ? g.add(slow, a) : g.sub(slow, a);
            CHECK(g.int_mul(a, m) == slow);
        }
    }
}

TEST_CASE("distributivity of group-integer multiplication") {
    Rng rng(13);
    for (const char* desc : {"Z2", "Z5", "Z2xZ3", "Z4xZ4"}) {
        AbelianGroup g = AbelianGroup::parse(desc);
        for (int trial = 0; trial < 10000; ++trial) {
            GroupElem g1 = g.random(rng), g2 = g.random(rng);
            std::int64_t m1 = (std::int64_t)rng.below(2001) - 1000;
            std::int64_t m2 = (std::int64_t)rng.below(2001) - 1000;
            GroupElem lhs = g.int_mul(g.add(g1, g2), m1 + m2);
            GroupElem rhs = g.add(g.add(g.int_mul(g1, m1), g.int_mul(g1, m2)),
                                  g.add(g.int_mul(g2, m1), g.int_mul(g2, m2)));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("int_mul reduces modulo the order lcm") {
    Rng rng(17);
    for (const char* desc : {"Z2", "Z5", "Z2xZ3", "Z4xZ4"}) {
        AbelianGroup g = AbelianGroup::parse(desc);
        std::int64_t lcm = (std::int64_t)g.order_lcm();
        for (int trial = 0; trial < 500; ++trial) {
            GroupElem a = g.random(rng);
            std::int64_t m = (std::int64_t)rng.below(100000) - 50000;
            std::int64_t mm = ((m % lcm) + lcm) % lcm;
            REQUIRE(g.int_mul(a, m) == g.int_mul(a, mm));
        }
    }
}

TEST_CASE("element index round trip") {
    AbelianGroup g = AbelianGroup::parse("Z4xZ4");
    for (std::uint64_t i = 0; i < g.size(); ++i) CHECK(g.to_index(g.from_index(i)) == i);
}
