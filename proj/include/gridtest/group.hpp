#ifndef GRIDTEST_GROUP_HPP
#define GRIDTEST_GROUP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridtest/common.hpp"

namespace gridtest {

/// Element of a product of cyclic groups, residues packed as 16-bit lanes.
struct GroupElem {
    std::uint64_t bits = 0;
    friend bool operator==(GroupElem a, GroupElem b) { return a.bits == b.bits; }
    friend bool operator!=(GroupElem a, GroupElem b) { return a.bits != b.bits; }
    friend bool operator<(GroupElem a, GroupElem b) { return a.bits < b.bits; }
};

/// Finite abelian group given as Z_{m1} x ... x Z_{mr}, r <= 4, each m <= 65535.
/// Every finite abelian group is isomorphic to such a product; only explicit
/// products are supported.
class AbelianGroup {
public:
    using Elem = GroupElem;

    AbelianGroup() = default;

    explicit AbelianGroup(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
        require(!orders_.empty(), Errc::invalid_argument, "group: empty order list");
        require(orders_.size() <= 4, Errc::invalid_argument, "group: at most 4 cyclic factors supported");
        for (auto m : orders_)
            require(m >= 1 && m <= 0xffff, Errc::invalid_argument, "group: cyclic order out of range");
    }

    static AbelianGroup cyclic(std::uint32_t m) { return AbelianGroup(std::vector<std::uint32_t>{m}); }

    /// Parses descriptors like "Z5" or "Z2xZ3".
    static AbelianGroup parse(const std::string& desc) {
        std::vector<std::uint32_t> orders;
        std::size_t i = 0;
        while (i < desc.size()) {
            require(desc[i] == 'Z', Errc::parse_error, "group descriptor: expected 'Z' in '" + desc + "'");
            ++i;
            std::size_t j = i;
            while (j < desc.size() && desc[j] >= '0' && desc[j] <= '9') ++j;
            require(j > i, Errc::parse_error, "group descriptor: missing order in '" + desc + "'");
            unsigned long v = std::stoul(desc.substr(i, j - i));
            require(v >= 1 && v <= 0xffff, Errc::parse_error, "group descriptor: order out of range");
            orders.push_back(static_cast<std::uint32_t>(v));
            i = j;
            if (i < desc.size()) {
                require(desc[i] == 'x', Errc::parse_error, "group descriptor: expected 'x' in '" + desc + "'");
                ++i;
                require(i < desc.size(), Errc::parse_error, "group descriptor: trailing 'x'");
            }
        }
        require(!orders.empty(), Errc::parse_error, "group descriptor: empty");
        return AbelianGroup(std::move(orders));
    }

    std::string descriptor() const {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += 'x';
            s += 'Z' + std::to_string(orders_[i]);
        }
        return s;
    }

    int factors() const { return static_cast<int>(orders_.size()); }
    std::uint32_t order(int i) const { return orders_[i]; }
    const std::vector<std::uint32_t>& orders() const { return orders_; }

    bool same(const AbelianGroup& o) const { return orders_ == o.orders_; }

    std::uint64_t size() const {
        std::uint64_t s = 1;
        for (auto m : orders_) s *= m;
        return s;
    }

    std::uint64_t order_lcm() const {
        std::uint64_t l = 1;
        for (auto m : orders_) l = std::lcm(l, (std::uint64_t)m);
        return l;
    }

    Elem zero() const { return GroupElem{0}; }

    Elem make(const std::vector<std::uint32_t>& residues) const {
        require(residues.size() == orders_.size(), Errc::invalid_argument, "group: residue arity mismatch");
        GroupElem e;
        for (std::size_t i = 0; i < residues.size(); ++i) {
            require(residues[i] < orders_[i], Errc::invalid_argument, "group: residue out of range");
            e.bits |= (std::uint64_t)residues[i] << (16 * i);
        }
        return e;
    }

    std::uint32_t residue(Elem e, int i) const { return (e.bits >> (16 * i)) & 0xffff; }

    Elem add(Elem a, Elem b) const {
        GroupElem r;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::uint32_t s = residue(a, (int)i) + residue(b, (int)i);
            if (s >= orders_[i]) s -= orders_[i];
            r.bits |= (std::uint64_t)s << (16 * i);
        }
        return r;
    }

    Elem neg(Elem a) const {
        GroupElem r;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::uint32_t v = residue(a, (int)i);
            std::uint32_t s = v == 0 ? 0 : orders_[i] - v;
            r.bits |= (std::uint64_t)s << (16 * i);
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    /// g*m with m reduced modulo each factor's order, never by repeated addition.
    Elem int_mul(Elem a, std::int64_t m) const {
        GroupElem r;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::int64_t mm = m % (std::int64_t)orders_[i];
            if (mm < 0) mm += orders_[i];
            std::uint64_t v = ((std::uint64_t)residue(a, (int)i) * (std::uint64_t)mm) % orders_[i];
            r.bits |= v << (16 * i);
        }
        return r;
    }

    /// Index in [0, size()) under mixed-radix encoding; inverse of from_index.
    std::uint64_t to_index(Elem e) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + residue(e, (int)i);
        return idx;
    }

    Elem from_index(std::uint64_t idx) const {
        GroupElem e;
        for (std::size_t i = orders_.size(); i-- > 0;) {
            e.bits |= (idx % orders_[i]) << (16 * i);
            idx /= orders_[i];
        }
        return e;
    }

    Elem random(class Rng& rng) const;

    std::string to_string(Elem e) const {
        if (orders_.size() == 1) return std::to_string(residue(e, 0));
        std::string s = "(";
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(residue(e, (int)i));
        }
        return s + ")";
    }

private:
    std::vector<std::uint32_t> orders_;
};

} // namespace gridtest

#include "gridtest/rng.hpp"

namespace gridtest {
inline GroupElem AbelianGroup::random(Rng& rng) const { return from_index(rng.below(size())); }
} // namespace gridtest

#endif
