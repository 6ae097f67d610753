#include <doctest.h>

#include "gridtest/bigint.hpp"

using namespace gridtest;

TEST_CASE("big integer arithmetic basics") {
    CHECK(BigUint(0).is_zero());
    CHECK(BigUint(1) + BigUint(1) == BigUint(2));
    CHECK(BigUint(1'000'000'007) * BigUint(1'000'000'009) == BigUint(1000000016000000063ull));
    CHECK(BigUint(100) - BigUint(58) == BigUint(42));
    CHECK_THROWS_AS(BigUint(1) - BigUint(2), Error);

    BigUint big = BigUint::pow(10, 30);
    CHECK(big.str() == "1000000000000000000000000000000");
    CHECK((big % BigUint(998244353)).fits_u64());
    CHECK(BigUint::gcd(BigUint(48), BigUint(36)) == BigUint(12));
}

TEST_CASE("factorials and binomials") {
    CHECK(BigUint::factorial(10) == BigUint(3628800));
    CHECK(BigUint::factorial(27).str() == "10888869450418352160768000000");
    CHECK(BigUint::binomial(27, 9) == BigUint(4686825));
    CHECK(BigUint::binomial(5, 7).is_zero());
    // pascal identity on a grid of values
    for (std::uint32_t n = 1; n < 20; ++n)
        for (std::uint32_t k = 1; k <= n; ++k)
            CHECK(BigUint::binomial(n, k) ==
                  BigUint::binomial(n - 1, k - 1) + BigUint::binomial(n - 1, k));
}

TEST_CASE("division round trip") {
    BigUint a = BigUint::factorial(30);
    BigUint b = BigUint::factorial(13);
    BigUint q, r;
    BigUint::divmod(a, b, q, r);
    CHECK(r.is_zero());
    CHECK(q * b == a);
    BigUint::divmod(a + BigUint(5), b, q, r);
    CHECK(r == BigUint(5));
}

TEST_CASE("rationals reduce and compare") {
    BigRat half(BigUint(2), BigUint(4));
    CHECK(half == BigRat(BigUint(1), BigUint(2)));
    BigRat third(BigUint(1), BigUint(3));
    CHECK(third < half);
    CHECK((half - half).is_zero());
    CHECK(half + third == BigRat(BigUint(5), BigUint(6)));
    CHECK(half * third == BigRat(BigUint(1), BigUint(6)));
    BigRat neg = BigRat(BigUint(1), BigUint(2), true);
    CHECK(neg + half == BigRat(0));
    CHECK(neg < third);
    CHECK(BigRat::pow(neg, 2) == BigRat(BigUint(1), BigUint(4)));
    CHECK(half.to_double() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("frac is exact and reduced") {
    Frac f(6, 8);
    CHECK(f.num == 3);
    CHECK(f.den == 4);
    CHECK(Frac(1, 3) < Frac(1, 2));
    CHECK(Frac(0, 5) == Frac(0, 9));
    CHECK_THROWS_AS(Frac(1, 0), Error);
}
