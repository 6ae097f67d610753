#include <doctest.h>

#include "gridtest/distance.hpp"
#include "gridtest/lower_bound.hpp"

using namespace gridtest;

TEST_CASE("asymmetric grid construction") {
    AsymmetricGrid g = make_asymmetric_grid(16);
    CHECK(g.field.p() == 19); // smallest prime >= 18
    CHECK(g.a[0] == 2);
    CHECK(g.a[15] == 17);
    CHECK(make_asymmetric_grid(243).field.p() == 251);
    // all a_i distinct and non-Boolean
    for (int i = 0; i < 16; ++i) {
        CHECK(g.a[i] != 0);
        CHECK(g.a[i] != 1);
        for (int j = i + 1; j < 16; ++j) CHECK(g.a[i] != g.a[j]);
    }
}

TEST_CASE("hard function values") {
    AsymmetricGrid g = make_asymmetric_grid(4);
    FieldOracle f = hard_function(g, 2);
    GridPoint boolean({0, 1, 1, 2});
    CHECK(f(boolean) == 0); // x_2 = 1 is Boolean
    GridPoint star({0, 1, 2, 2});
    Fp a2 = g.a[2];
    CHECK(f(star) == g.field.mul(a2, g.field.sub(a2, 1)));
    CHECK(f(star) != 0);
}

TEST_CASE("hard functions are junta-degree 1 but far from degree 1") {
    AsymmetricGrid g = make_asymmetric_grid(2);
    // embed the hard function into a dense table over the 3x3 grid
    FieldOracle f = hard_function(g, 0).densified();
    // junta-degree: depends on one coordinate only
    CHECK(f(GridPoint({2, 0})) == f(GridPoint({2, 2})));
    // exact distance to degree-1 over the value embedding {0,1,a_i}
    EvalSet S0(g.field, {0, 1, g.a[0]});
    auto res = exact_distance_degree(f, S0, 1);
    CHECK(res.distance >= Frac(1, 3));
}

TEST_CASE("zeta collisions") {
    AsymmetricGrid g = make_asymmetric_grid(4);
    {
        // two identical all-Boolean columns collide
        QueryMatrix m;
        m.ell = 2;
        m.n = 4;
        m.sym = {0, 0, 1, 2, 1, 1, 0, 2};
        // columns: c0 = (0,1), c1 = (0,1), c2 = (1,0), c3 = (2,2)
        auto j = zeta_collision(m, 0);
        REQUIRE(j.has_value());
        CHECK(*j == 1);
        CHECK(!zeta_collision(m, 2).has_value());
        // column 3 is all-star; no partner
        CHECK(!zeta_collision(m, 3).has_value());
        CHECK(bad_fraction(m) == Frac(2, 4));
    }
    {
        // the all-star matrix collides everywhere
        QueryMatrix m;
        m.ell = 3;
        m.n = 4;
        m.sym.assign(12, 2);
        for (int i = 0; i < 4; ++i) CHECK(zeta_collision(m, i).has_value());
        CHECK(bad_fraction(m) == Frac(0, 1));
    }
    {
        // ell = 1 over alphabet {0,1,star}: at most 3 bad indices
        Rng rng(121);
        AsymmetricGrid g8 = make_asymmetric_grid(8);
        for (int trial = 0; trial < 50; ++trial) {
            QueryMatrix m = QueryMatrix::random(g8, 1, rng);
            CHECK(bad_fraction(m) <= Frac(3, 8));
        }
    }
    {
        // empty matrix: every column shares the empty zeta-column
        QueryMatrix m;
        m.ell = 0;
        m.n = 4;
        CHECK(bad_fraction(m) == Frac(0, 1));
    }
}

TEST_CASE("fooling certificates verify exactly") {
    Rng rng(123);
    AsymmetricGrid g = make_asymmetric_grid(16);
    CHECK(g.field.p() == 19);
    int certified = 0;
    for (int trial = 0; trial < 50; ++trial) {
        QueryMatrix m = QueryMatrix::random(g, 3, rng);
        // plant a collision: copy column 0's zeta-pattern into column 1
        for (int r = 0; r < 3; ++r) m.at(r, 1) = m.at(r, 0);
        auto j = zeta_collision(m, 0);
        REQUIRE(j.has_value());
        auto cert = fooling_certificate(m, 0, *j, g);
        REQUIRE(cert.size() == 2);
        // M * cert reproduces the hard-function query values
        auto want = hard_values_on_rows(m, 0, g);
        for (int r = 0; r < 3; ++r) {
            Fp got = 0;
            for (auto [col, coef] : cert)
                got = g.field.add(got, g.field.mul(coef, g.value(col, m.at(r, col))));
            REQUIRE(got == want[r]);
        }
        // and the certified vector lies in the column space
        CHECK(in_column_space(m, g, want));
        ++certified;
    }
    CHECK(certified == 50);
}

TEST_CASE("certificates require a collision") {
    AsymmetricGrid g = make_asymmetric_grid(3);
    QueryMatrix m;
    m.ell = 1;
    m.n = 3;
    m.sym = {0, 1, 2}; // all zeta-columns distinct
    CHECK(!zeta_collision(m, 0).has_value());
    CHECK_THROWS_AS(fooling_certificate(m, 0, 1, g), Error);
    try {
        fooling_certificate(m, 0, 2, g);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_collision);
    }
}

TEST_CASE("adversarial distinct columns need few coordinates") {
    // with n <= 3^ell all-distinct zeta-columns are possible and the bound
    // 3^ell / n is met with equality
    AsymmetricGrid g = make_asymmetric_grid(3);
    QueryMatrix m;
    m.ell = 1;
    m.n = 3;
    m.sym = {0, 1, 2};
    CHECK(bad_fraction(m) == Frac(1, 1));
    CHECK(bad_fraction(m) <= Frac(3, 3));
}

TEST_CASE("matrix rank over the prime field") {
    AsymmetricGrid g = make_asymmetric_grid(4);
    QueryMatrix m;
    m.ell = 2;
    m.n = 4;
    m.sym = {0, 0, 1, 2, 0, 0, 2, 1};
    // values: rows (0,0,1,a4), (0,0,a3,1) with a3 = 4, a4 = 5 in F_7
    CHECK(matrix_rank(m, g) == 2);
    QueryMatrix zero;
    zero.ell = 2;
    zero.n = 3;
    zero.sym.assign(6, 0);
    CHECK(matrix_rank(zero, g) == 0);
}
