#include <doctest.h>

#include <cmath>
#include <set>

#include "gridtest/distance.hpp"
#include "gridtest/reference.hpp"
#include "gridtest/testers.hpp"

using namespace gridtest;

TEST_CASE("locality and block length resolution") {
    CHECK(resolve_locality(1, 3, 0, false, 1) == 8);
    CHECK(resolve_locality(7, 3, 0, false, 1) == 9);
    CHECK(resolve_locality(1, 3, 4, false, 1) == 4);
    CHECK(resolve_locality(1, 3, 0, true, 1) == 9);   // psi*s^2*d
    CHECK(resolve_locality(0, 3, 0, true, 2) == 18);  // d=0 uses psi*s^2
    CHECK_THROWS_AS(resolve_locality(5, 3, 4, false, 1), Error); // k < d+1

    PrimeField f7(7);
    CHECK(resolve_block_length(EvalSet::prefix(f7, 3), 0, false) == 6);
    CHECK(resolve_block_length(EvalSet::prefix(f7, 3), 0, true) == 27);
    CHECK(resolve_block_length(EvalSet::prefix(f7, 3), 12, false) == 12);
    CHECK_THROWS_AS(resolve_block_length(EvalSet::prefix(f7, 3), 7, false), Error);
}

TEST_CASE("sigma sampling") {
    Rng rng(81);
    CHECK(sample_sigma(4, 4, rng) == std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(sample_sigma(3, 4, rng), Error);
    for (int trial = 0; trial < 100; ++trial) {
        auto sigma = sample_sigma(20, 5, rng);
        REQUIRE(sigma.size() == 20);
        std::vector<int> fiber(5, 0);
        for (int i = 0; i < 20; ++i) {
            REQUIRE(sigma[i] >= 0);
            REQUIRE(sigma[i] < 5);
            ++fiber[sigma[i]];
        }
        int total = 0;
        for (int f : fiber) total += f;
        REQUIRE(total == 20);
        for (int i = 0; i < 5; ++i) REQUIRE(sigma[i] == i);
    }
    // goodness (every fiber >= r/4k) occurs with positive frequency
    int good = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        auto sigma = sample_sigma(64, 4, rng);
        std::vector<int> fiber(4, 0);
        for (int v : sigma) ++fiber[v];
        bool ok = true;
        for (int f : fiber) ok = ok && f >= 4;
        good += ok;
    }
    CHECK(good > 0);
}

TEST_CASE("junta testers always accept members") {
    Rng rng(83);
    for (auto [s, d, k] : std::vector<std::array<int, 3>>{{2, 1, 4}, {3, 1, 4}, {3, 2, 5}}) {
        AbelianGroup g = AbelianGroup::parse(s == 2 ? "Z2xZ3" : "Z5");
        JuntaDegTester tester(d, k);
        const int n = 7;
        for (int trial = 0; trial < 60; ++trial) {
            JuntaPolynomial member = JuntaPolynomial::random(g, s, n, d, rng);
            GroupOracle f = member.oracle();
            TestVerdict v1 = tester.run_recursive(f, rng);
            TestVerdict v2 = tester.run_rephrased(f, rng);
            REQUIRE(v1.accept);
            REQUIRE(v2.accept);
            std::uint64_t cap = 1;
            for (int i = 0; i < k; ++i) cap *= s;
            REQUIRE(v1.queries <= cap);
            REQUIRE(v2.queries <= cap);
        }
    }
}

TEST_CASE("small instances fall through to the exact check") {
    Rng rng(85);
    AbelianGroup z3 = AbelianGroup::cyclic(3);
    JuntaDegTester tester(1, 8);
    GridDomain dom = GridDomain::symmetric(2, 3); // n=3 <= k
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<GroupElem> table(8);
        for (auto& v : table) v = z3.random(rng);
        GroupOracle f(dom, z3, table);
        bool exact = junta_degree(f) <= 1;
        CHECK(tester.run_recursive(f, rng).accept == exact);
        CHECK(tester.run_rephrased(f, rng).accept == exact);
        CHECK(tester.run_recursive(f, rng).queries == 8);
    }
}

TEST_CASE("rejection rate matches the exact history enumeration") {
    // the (d+1)-coordinate indicator at n=6, k=4, s=2: every identification
    // history is enumerable, giving the exact rejection probability
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    const int n = 6, k = 4, d = 1, s = 2;
    JuntaPolynomial hard(z2, s, n);
    hard.accumulate({{0, 1}, {1, 1}}, z2.make({1}));
    GroupOracle f = hard.oracle();

    double exact = reference::recursive_tester_exact_rejection(f, d, k);
    CHECK(exact > 0);

    JuntaDegTester tester(d, k);
    auto est = estimate_rejection([&](Rng& rng) { return tester.run_recursive(f, rng); }, 20000,
                                  987, 0);
    CHECK(est.rate > 0);
    // the Wilson interval must cover the exact probability
    CHECK(est.ci_lo <= exact);
    CHECK(est.ci_hi >= exact);
}

TEST_CASE("seeded transcripts replay deterministically") {
    AbelianGroup z3 = AbelianGroup::cyclic(3);
    GridDomain dom = GridDomain::symmetric(3, 6);
    GroupOracle f(dom, z3, [&](const GridPoint& x) {
        return z3.make({(std::uint32_t)((x[0] + 2 * x[1]) % 3)});
    });
    JuntaDegTester tester(1, 4);
    Rng r1(4242), r2(4242);
    TestVerdict a = tester.run_rephrased(f, r1);
    TestVerdict b = tester.run_rephrased(f, r2);
    CHECK(a.accept == b.accept);
    REQUIRE(a.assigns.size() == b.assigns.size());
    for (std::size_t i = 0; i < a.assigns.size(); ++i) {
        CHECK(a.assigns[i].bucket == b.assigns[i].bucket);
        CHECK(a.assigns[i].perm == b.assigns[i].perm);
    }
}

TEST_CASE("query sets are the transcript's subcube, for both forms") {
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    GridDomain dom = GridDomain::symmetric(3, 7);
    const int k = 3;
    for (int form = 0; form < 2; ++form) {
        std::set<std::vector<Coord>> seen;
        GroupOracle recorder(dom, z2, [&seen](const GridPoint& x) {
            seen.insert(x.x);
            return GroupElem{0};
        });
        Rng rng(314 + form);
        JuntaDegTester tester(1, k);
        TestVerdict v = form == 0 ? tester.run_recursive(recorder, rng)
                                  : tester.run_rephrased(recorder, rng);
        CHECK(v.queries == 27); // 3^k, each point once
        CHECK(seen.size() == 27);
        // reconstruct the subcube from the transcript
        std::set<std::vector<Coord>> expect;
        GridDomain cube = GridDomain::symmetric(3, v.restricted_arity);
        cube.for_each_point([&](const GridPoint& y) {
            std::vector<Coord> x(7);
            for (int i = 0; i < 7; ++i) x[i] = v.assigns[i].perm[y[v.assigns[i].bucket]];
            expect.insert(x);
        });
        CHECK(seen == expect);
    }
}

TEST_CASE("weak degree tester") {
    PrimeField f7(7);
    EvalSet S = EvalSet::prefix(f7, 3);
    const int n = 8, t = 6;
    GridDomain dom = GridDomain::symmetric(3, n);
    {
        // members accepted, query count is the full balanced power
        WeakDegTester tester(S, n, 1, t);
        Rng rng(91);
        for (int trial = 0; trial < 25; ++trial) {
            ReducedPolynomial member = ReducedPolynomial::random(f7, n, 3, 1, rng);
            FieldOracle f(dom, f7, [&](const GridPoint& x) {
                std::vector<Fp> vals(n);
                for (int i = 0; i < n; ++i) vals[i] = S.elem(x[i]);
                return member.evaluate(vals);
            });
            TestVerdict v = tester.run(f, rng);
            REQUIRE(v.accept);
            REQUIRE(v.queries == 8100); // |B({0,1,2},6)|^2 = 90^2
            REQUIRE(v.mu.size() == n);
        }
    }
    {
        // x_1(x_1-1) is junta-degree-1 but never degree-1 after restriction
        WeakDegTester tester(S, n, 1, t);
        FieldOracle f(dom, f7, [&](const GridPoint& x) {
            Fp v = S.elem(x[0]);
            return f7.mul(v, f7.sub(v, 1));
        });
        auto est = estimate_rejection([&](Rng& rng) { return tester.run(f, rng); }, 200, 92, 0);
        CHECK(est.rate > 0);
    }
    {
        // constants pass for every d
        for (int d : {0, 1, 2}) {
            WeakDegTester tester(S, 4, d, t);
            FieldOracle f(GridDomain::symmetric(3, 4), f7, [](const GridPoint&) -> Fp { return 5; });
            Rng rng(93);
            CHECK(tester.run(f, rng).accept);
        }
    }
    {
        // block length t = 27 wants an astronomically large balanced power
        try {
            WeakDegTester tester(S, 4, 1, 27);
            FAIL("expected budget error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::budget_exceeded);
            BigUint want = balanced_size(3, 27) * balanced_size(3, 27);
            CHECK(std::string(e.what()).find(want.str()) != std::string::npos);
        }
    }
}

TEST_CASE("deg tester attributes rejections to arms") {
    PrimeField f7(7);
    EvalSet S = EvalSet::prefix(f7, 3);
    const int n = 6, d = 1;
    DegTester tester(S, n, d, 4, 6);
    GridDomain dom = GridDomain::symmetric(3, n);
    {
        // member: both arms accept
        Rng rng(95);
        ReducedPolynomial member = ReducedPolynomial::random(f7, n, 3, d, rng);
        FieldOracle f(dom, f7, [&](const GridPoint& x) {
            std::vector<Fp> vals(n);
            for (int i = 0; i < n; ++i) vals[i] = S.elem(x[i]);
            return member.evaluate(vals);
        });
        for (int trial = 0; trial < 20; ++trial) {
            TestVerdict v = tester.run(f, rng);
            REQUIRE(v.accept);
            REQUIRE(v.junta_arm == 1);
            REQUIRE(v.weak_arm == 1);
        }
    }
    {
        // junta-degree-1, not degree-1: only the weak arm fires
        FieldOracle f(dom, f7, [&](const GridPoint& x) {
            Fp v = S.elem(x[0]);
            return f7.mul(v, f7.sub(v, 1));
        });
        auto est = estimate_rejection([&](Rng& rng) { return tester.run(f, rng); }, 300, 96, 0);
        CHECK(est.rejections > 0);
        CHECK(est.junta_arm_rejections == 0);
        CHECK(est.weak_arm_rejections == est.rejections);
    }
    {
        // junta-degree-2 indicator: the junta arm fires
        FieldOracle f(dom, f7, [](const GridPoint& x) -> Fp {
            return (x[0] == 1 && x[1] == 1) ? 1 : 0;
        });
        auto est = estimate_rejection([&](Rng& rng) { return tester.run(f, rng); }, 300, 97, 0);
        CHECK(est.junta_arm_rejections > 0);
    }
}

TEST_CASE("lifting a general grid") {
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    {
        GridDomain dom({2, 3});
        GroupOracle f(dom, z2, [&](const GridPoint& x) {
            return z2.make({(std::uint32_t)((x[0] + x[1]) & 1)});
        });
        GroupOracle lifted = lift_general_grid(f);
        CHECK(lifted.domain().same(GridDomain::symmetric(6, 2)));
        // lifted values only depend on the projected coordinates
        GridPoint a({4, 5}), b({2, 5}); // 4 mod 2 == 2 mod 2 == 0
        CHECK(lifted(a) == lifted(b));
    }
    {
        // junta-degree preserved on random functions
        Rng rng(99);
        GridDomain dom({2, 3});
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<GroupElem> table(6);
            for (auto& v : table) v = z2.random(rng);
            GroupOracle f(dom, z2, table);
            GroupOracle lifted = lift_general_grid(f).densified();
            for (int d = 0; d <= 2; ++d)
                REQUIRE(reference::is_sum_of_d_juntas(dom, z2, table, d) ==
                        reference::is_sum_of_d_juntas(lifted.domain(), z2, lifted.table(), d));
        }
    }
    {
        // distance preserved exactly (small case; the acceptance suite runs
        // the full criterion)
        Rng rng(101);
        GridDomain dom({2, 3, 2, 3});
        std::uint64_t npts = dom.cardinality_checked();
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<GroupElem> table(npts);
            for (auto& v : table) v = z2.random(rng);
            GroupOracle f(dom, z2, table);
            Frac direct = exact_distance_junta(f, 1).distance;
            Frac lifted = exact_distance_junta(lift_general_grid(f).densified(), 1).distance;
            REQUIRE(direct == lifted);
        }
    }
    {
        // lcm beyond the alphabet cap
        GridDomain dom({9, 11, 16, 13, 7, 17, 19, 23});
        GroupOracle f(dom, z2, [&](const GridPoint&) { return z2.zero(); });
        CHECK_THROWS_AS(lift_general_grid(f), Error);
    }
}

TEST_CASE("rejection estimation statistics") {
    AbelianGroup z3 = AbelianGroup::cyclic(3);
    GridDomain dom = GridDomain::symmetric(3, 6);
    JuntaDegTester tester(1, 4);
    {
        // members: rate exactly zero, upper confidence below 3/trials
        Rng seedgen(103);
        JuntaPolynomial member = JuntaPolynomial::random(z3, 3, 6, 1, seedgen);
        GroupOracle f = member.oracle();
        auto est = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(f, rng); },
                                      2000, 104, 0);
        CHECK(est.rejections == 0);
        CHECK(est.rate == 0.0);
        // Wilson upper bound at zero successes is z^2/(n+z^2), just under 3.9/n
        CHECK(est.ci_hi < 3.9 / 2000);
    }
    GroupOracle hard(dom, z3, [&](const GridPoint& x) {
        return z3.make({(std::uint32_t)((x[0] == 1 && x[1] == 1) ? 1 : 0)});
    });
    {
        auto est = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(hard, rng); },
                                      1, 105, 0);
        CHECK((est.rate == 0.0 || est.rate == 1.0));
    }
    {
        // quadrupling the trial count halves the interval width
        auto a = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(hard, rng); },
                                    1000, 106, 0);
        auto b = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(hard, rng); },
                                    4000, 106, 0);
        double wa = a.ci_hi - a.ci_lo, wb = b.ci_hi - b.ci_lo;
        CHECK(wb / wa == doctest::Approx(0.5).epsilon(0.2));
    }
    {
        // scheduling independence: 1 worker and 4 workers agree exactly
        auto a = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(hard, rng); },
                                    500, 107, 1);
        auto b = estimate_rejection([&](Rng& rng) { return tester.run_rephrased(hard, rng); },
                                    500, 107, 4);
        CHECK(a.rejections == b.rejections);
        CHECK(a.mean_queries == b.mean_queries);
    }
}

TEST_CASE("rephrased restriction images are uniform over the grid") {
    // for any fixed y, the assembled query point of the rephrased form is
    // uniform over Z_s^n (fresh permutation on every coordinate);
    // chi-square over all 27 outcomes
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    GridDomain dom = GridDomain::symmetric(3, 3);
    GroupOracle f(dom, z2, [&](const GridPoint&) { return z2.zero(); });
    JuntaDegTester tester(1, 2);
    GridPoint y({1, 0});
    const int samples = 54000;
    Rng rng(777);
    std::vector<std::uint64_t> counts(27, 0);
    for (int t = 0; t < samples; ++t) {
        TestVerdict v = tester.run_rephrased(f, rng);
        GridPoint x(std::vector<Coord>(3, 0));
        for (int i = 0; i < 3; ++i) x.x[i] = v.assigns[i].perm[y[v.assigns[i].bucket]];
        ++counts[dom.index_of(x)];
    }
    double expect = samples / 27.0;
    double chi2 = 0;
    for (auto c : counts) {
        double d = (double)c - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2 < 60.0); // 26 dof, p ~ 2e-4
}

TEST_CASE("query sets agree in law between the two forms") {
    // the parametrizations differ, but the distribution of the queried
    // subcube is shared: compare the hit frequency of a fixed grid point
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    GridDomain dom = GridDomain::symmetric(3, 4);
    const std::uint64_t target = dom.index_of(GridPoint({0, 1, 2, 1}));
    JuntaDegTester tester(1, 2);
    const int samples = 20000;
    double rate[2];
    for (int form = 0; form < 2; ++form) {
        Rng rng(808 + form);
        int hits = 0;
        for (int t = 0; t < samples; ++t) {
            bool seen = false;
            GroupOracle recorder(dom, z2, [&](const GridPoint& x) {
                seen = seen || dom.index_of(x) == target;
                return z2.zero();
            });
            TestVerdict v = form == 0 ? tester.run_recursive(recorder, rng)
                                      : tester.run_rephrased(recorder, rng);
            (void)v;
            hits += seen;
        }
        rate[form] = (double)hits / samples;
    }
    double pooled = (rate[0] + rate[1]) / 2;
    double sigma = std::sqrt(pooled * (1 - pooled) * (2.0 / samples));
    CHECK(std::abs(rate[0] - rate[1]) <= 3 * sigma + 1e-12);
}

TEST_CASE("positive rejection at positive measured distance") {
    // corrupt a member, measure its exact distance, and require the tester
    // to fire at least once at that distance
    Rng rng(127);
    AbelianGroup z3 = AbelianGroup::cyclic(3);
    JuntaDegTester tester(1, 4);
    for (int trial = 0; trial < 3; ++trial) {
        auto corrupted = random_function_at_distance_junta(z3, 3, 4, 1, Frac(1, 9), rng);
        REQUIRE(corrupted.measured > Frac(0, 1));
        const GroupOracle& f = corrupted.oracle;
        auto est = estimate_rejection([&](Rng& r) { return tester.run_rephrased(f, r); }, 2000,
                                      128 + trial, 0);
        CHECK(est.rejections > 0);
    }
}

TEST_CASE("asymmetric grids are rejected by the junta testers") {
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    GridDomain dom({2, 3});
    GroupOracle f(dom, z2, [&](const GridPoint&) { return z2.zero(); });
    JuntaDegTester tester(1, 4);
    Rng rng(109);
    CHECK_THROWS_AS(tester.run_recursive(f, rng), Error);
    CHECK_THROWS_AS(tester.run_rephrased(f, rng), Error);
}
