#include <doctest.h>

#include <set>
#include <sstream>

#include "gridtest/rng.hpp"
#include "gridtest/table_io.hpp"

using namespace gridtest;

TEST_CASE("point enumeration is lexicographic and complete") {
    GridDomain dom({2, 3});
    auto pts = dom.enumerate_points();
    REQUIRE(pts.size() == 6);
    CHECK(pts.front() == GridPoint({0, 0}));
    CHECK(pts[1] == GridPoint({0, 1}));
    CHECK(pts.back() == GridPoint({1, 2}));

    CHECK(GridDomain({1}).enumerate_points().size() == 1);
    CHECK(GridDomain({3, 3, 3}).enumerate_points().size() == 27);

    // distinctness and index round trip
    std::set<std::vector<Coord>> seen;
    for (std::uint64_t i = 0; i < pts.size(); ++i) {
        CHECK(dom.index_of(pts[i]) == i);
        CHECK(dom.point_at(i) == pts[i]);
        seen.insert(pts[i].x);
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("enumeration distinctness on a larger grid") {
    GridDomain dom({7, 5, 4, 3});
    std::set<std::uint64_t> seen;
    dom.for_each_point([&](const GridPoint& p) { seen.insert(dom.index_of(p)); });
    CHECK(seen.size() == 7u * 5 * 4 * 3);
}

TEST_CASE("oversized domains are refused") {
    GridDomain dom(std::vector<Coord>(30, 10)); // 10^30 points
    CHECK(dom.cardinality().str() == "1" + std::string(30, '0'));
    CHECK_THROWS_AS(dom.enumerate_points(), Error);
    try {
        dom.cardinality_checked();
    } catch (const Error& e) {
        CHECK(e.code() == Errc::domain_too_large);
    }
}

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(GridPoint({0, 0, 0})) == 0);
    CHECK(hamming_weight(GridPoint({1, 0, 2})) == 2);
    CHECK(hamming_weight(GridPoint({3, 1, 2, 1})) == 4);
}

namespace {

GroupOracle table_oracle(const GridDomain& dom, const AbelianGroup& g,
                         const std::vector<std::uint32_t>& residues) {
    std::vector<GroupElem> t;
    t.reserve(residues.size());
    for (auto r : residues) t.push_back(g.make({r}));
    return GroupOracle(dom, g, std::move(t));
}

} // namespace

TEST_CASE("fraction_disagree on dense oracles") {
    GridDomain dom({2, 2});
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    auto f = table_oracle(dom, z2, {0, 0, 1, 1}); // x1
    auto g = table_oracle(dom, z2, {0, 1, 0, 1}); // x2
    CHECK(fraction_disagree(f, f) == Frac(0, 1));
    CHECK(fraction_disagree(f, g) == Frac(1, 2));

    auto h = table_oracle(dom, z2, {0, 0, 1, 0}); // one point off f
    CHECK(fraction_disagree(f, h) == Frac(1, 4));

    GridDomain other({4});
    auto k = table_oracle(other, z2, {0, 0, 1, 1});
    CHECK_THROWS_AS(fraction_disagree(f, k), Error);
}

TEST_CASE("fraction_disagree is a metric on random triples") {
    Rng rng(7);
    GridDomain dom({3, 3});
    AbelianGroup z4 = AbelianGroup::cyclic(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint32_t> a(9), b(9), c(9);
        for (int i = 0; i < 9; ++i) {
            a[i] = (std::uint32_t)rng.below(4);
            b[i] = (std::uint32_t)rng.below(4);
            c[i] = (std::uint32_t)rng.below(4);
        }
        auto fa = table_oracle(dom, z4, a), fb = table_oracle(dom, z4, b),
             fc = table_oracle(dom, z4, c);
        Frac ab = fraction_disagree(fa, fb), ba = fraction_disagree(fb, fa);
        CHECK(ab == ba);
        Frac ac = fraction_disagree(fa, fc), cb = fraction_disagree(fc, fb);
        // triangle inequality with exact arithmetic: ab <= ac + cb
        CHECK((unsigned long long)ab.num * ac.den * cb.den <=
              (unsigned long long)ac.num * ab.den * cb.den +
                  (unsigned long long)cb.num * ab.den * ac.den);
    }
}

TEST_CASE("query counting") {
    GridDomain dom({3, 3, 3});
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    GroupOracle f(dom, z2, [&](const GridPoint& p) { return z2.make({(std::uint32_t)(p[0] & 1)}); });
    CHECK(f.query_count() == 0);
    dom.for_each_point([&](const GridPoint& p) { f(p); });
    CHECK(f.query_count() == 27);
    f(dom.first_point());
    CHECK(f.query_count() == 28);

    auto dense = f.densified();
    CHECK(dense.query_count() == 0);
    dom.for_each_point([&](const GridPoint& p) { dense(p); });
    CHECK(dense.query_count() == 27);
}

TEST_CASE("table round trip") {
    GridDomain dom({2, 3});
    AbelianGroup z5 = AbelianGroup::cyclic(5);
    auto f = table_oracle(dom, z5, {0, 1, 2, 3, 4, 0});
    std::ostringstream out;
    write_table(out, f);
    std::istringstream in(out.str());
    LoadedOracle back = read_table(in);
    const GroupOracle& g = std::get<GroupOracle>(back);
    CHECK(g.domain().same(dom));
    CHECK(fraction_disagree(f, g) == Frac(0, 1));

    std::ostringstream out2;
    write_table(out2, g);
    CHECK(out.str() == out2.str());
}

TEST_CASE("table parse errors carry line numbers") {
    {
        std::istringstream in("sizes: 2\nwrong: Z2\n0 | 0\n1 | 1\n");
        try {
            read_table(in);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::parse_error);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    {
        std::istringstream in("sizes: 2\ncodomain: Z2\n0 | 0\n1 | 5\n");
        try {
            read_table(in);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("line 4") != std::string::npos);
            CHECK(std::string(e.what()).find("out of range") != std::string::npos);
        }
    }
    {
        // wrong order
        std::istringstream in("sizes: 2\ncodomain: Z2\n1 | 0\n0 | 1\n");
        CHECK_THROWS_AS(read_table(in), Error);
    }
    {
        // field codomain must be prime
        std::istringstream in("sizes: 2\ncodomain: F6\n0 | 0\n1 | 1\n");
        CHECK_THROWS_AS(read_table(in), Error);
    }
}
