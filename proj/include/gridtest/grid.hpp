#ifndef GRIDTEST_GRID_HPP
#define GRIDTEST_GRID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridtest/bigint.hpp"
#include "gridtest/common.hpp"

namespace gridtest {

using Coord = std::int32_t;

/// Point of a product domain; coordinates are canonical symbols 0..s_i-1.
struct GridPoint {
    std::vector<Coord> x;

    GridPoint() = default;
    explicit GridPoint(std::vector<Coord> coords) : x(std::move(coords)) {}

    int arity() const { return static_cast<int>(x.size()); }
    Coord operator[](int i) const { return x[i]; }
    Coord& operator[](int i) { return x[i]; }

    friend bool operator==(const GridPoint& a, const GridPoint& b) { return a.x == b.x; }
    friend bool operator!=(const GridPoint& a, const GridPoint& b) { return a.x != b.x; }
    friend bool operator<(const GridPoint& a, const GridPoint& b) { return a.x < b.x; }
};

/// Number of nonzero coordinates.
inline int hamming_weight(const GridPoint& p) {
    int w = 0;
    for (Coord c : p.x) w += (c != 0);
    return w;
}

/// Shape (s_1,...,s_n) of a product domain S_1 x ... x S_n.
class GridDomain {
public:
    GridDomain() = default;
    explicit GridDomain(std::vector<Coord> sizes) : sizes_(std::move(sizes)) {
        require(!sizes_.empty(), Errc::invalid_argument, "grid: empty shape");
        for (Coord s : sizes_) require(s >= 1, Errc::invalid_argument, "grid: side must be >= 1");
    }

    /// Z_s^n.
    static GridDomain symmetric(int s, int n) {
        require(n >= 1 && s >= 1, Errc::invalid_argument, "grid: bad symmetric shape");
        return GridDomain(std::vector<Coord>(n, s));
    }

    int arity() const { return static_cast<int>(sizes_.size()); }
    Coord size(int i) const { return sizes_[i]; }
    const std::vector<Coord>& sizes() const { return sizes_; }

    bool symmetric_shape() const {
        for (Coord s : sizes_)
            if (s != sizes_[0]) return false;
        return true;
    }

    bool same(const GridDomain& o) const { return sizes_ == o.sizes_; }

    /// Exact cardinality, overflow-safe.
    BigUint cardinality() const {
        BigUint c(1);
        for (Coord s : sizes_) c.mul_small((std::uint64_t)s);
        return c;
    }

    /// Cardinality as u64, refusing domains above `budget` points.
    std::uint64_t cardinality_checked(std::uint64_t budget = kDefaultPointBudget) const {
        BigUint c = cardinality();
        if (!c.fits_u64() || c.to_u64() > budget)
            fail(Errc::domain_too_large,
                 "grid: " + c.str() + " points exceeds budget of " + std::to_string(budget));
        return c.to_u64();
    }

    bool contains(const GridPoint& p) const {
        if (p.arity() != arity()) return false;
        for (int i = 0; i < arity(); ++i)
            if (p[i] < 0 || p[i] >= sizes_[i]) return false;
        return true;
    }

    void check_point(const GridPoint& p) const {
        require(contains(p), p.arity() != arity() ? Errc::domain_mismatch : Errc::invalid_argument,
                "grid: point not in domain");
    }

    /// Lexicographic rank; the last coordinate varies fastest.
    std::uint64_t index_of(const GridPoint& p) const {
        std::uint64_t idx = 0;
        for (int i = 0; i < arity(); ++i) idx = idx * sizes_[i] + (std::uint64_t)p[i];
        return idx;
    }

    GridPoint point_at(std::uint64_t idx) const {
        GridPoint p;
        p.x.resize(arity());
        for (int i = arity(); i-- > 0;) {
            p.x[i] = static_cast<Coord>(idx % sizes_[i]);
            idx /= sizes_[i];
        }
        return p;
    }

    /// In-place lexicographic successor; returns false after the last point.
    bool advance(GridPoint& p) const {
        for (int i = arity(); i-- > 0;) {
            if (++p.x[i] < sizes_[i]) return true;
            p.x[i] = 0;
        }
        return false;
    }

    GridPoint first_point() const { return GridPoint(std::vector<Coord>(arity(), 0)); }

    /// Calls fn on every point in lexicographic order.
    template <typename Fn>
    void for_each_point(Fn&& fn, std::uint64_t budget = kDefaultPointBudget) const {
        cardinality_checked(budget);
        GridPoint p = first_point();
        do {
            fn(static_cast<const GridPoint&>(p));
        } while (advance(p));
    }

    std::vector<GridPoint> enumerate_points(std::uint64_t budget = kDefaultPointBudget) const {
        std::vector<GridPoint> pts;
        pts.reserve(cardinality_checked(budget));
        for_each_point([&](const GridPoint& p) { pts.push_back(p); }, budget);
        return pts;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < arity(); ++i) {
            if (i) s += ',';
            s += std::to_string(sizes_[i]);
        }
        return s + ")";
    }

private:
    std::vector<Coord> sizes_;
};

} // namespace gridtest

#endif
