#ifndef GRIDTEST_FIELD_HPP
#define GRIDTEST_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gridtest/common.hpp"
#include "gridtest/rng.hpp"

namespace gridtest {

using Fp = std::uint32_t;

/// Prime field F_p, elements canonical in [0, p).
class PrimeField {
public:
    using Elem = Fp;

    PrimeField() = default;
    explicit PrimeField(std::uint32_t p) : p_(p) {
        require(is_prime(p), Errc::invalid_argument, "field: " + std::to_string(p) + " is not prime");
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static std::uint32_t next_prime(std::uint32_t n) {
        while (!is_prime(n)) ++n;
        return n;
    }

    static PrimeField parse(const std::string& desc) {
        require(desc.size() >= 2 && desc[0] == 'F', Errc::parse_error, "field descriptor: expected 'F<p>'");
        for (std::size_t i = 1; i < desc.size(); ++i)
            require(desc[i] >= '0' && desc[i] <= '9', Errc::parse_error, "field descriptor: bad digit");
        return PrimeField(static_cast<std::uint32_t>(std::stoul(desc.substr(1))));
    }

    std::string descriptor() const { return "F" + std::to_string(p_); }

    std::uint32_t p() const { return p_; }
    bool same(const PrimeField& o) const { return p_ == o.p_; }
    std::uint64_t size() const { return p_; }

    Fp zero() const { return 0; }
    Fp one() const { return 1 % p_; }
    Fp reduce(std::int64_t v) const {
        std::int64_t r = v % (std::int64_t)p_;
        if (r < 0) r += p_;
        return static_cast<Fp>(r);
    }
    Fp add(Fp a, Fp b) const {
        Fp s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
    Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
    Fp mul(Fp a, Fp b) const { return static_cast<Fp>((std::uint64_t)a * b % p_); }
    Fp pow(Fp a, std::uint64_t e) const {
        Fp r = one(), x = a;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
    Fp inv(Fp a) const {
        require(a != 0, Errc::invalid_argument, "field: inverse of zero");
        return pow(a, p_ - 2);
    }
    Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

    Fp random(Rng& rng) const { return static_cast<Fp>(rng.below(p_)); }

private:
    std::uint32_t p_ = 2;
};

/// Ordered set of distinct evaluation points S subset of F_p. The listed
/// order is the canonical symbol order (symbol i <-> elems[i]).
class EvalSet {
public:
    EvalSet() = default;
    EvalSet(PrimeField field, std::vector<Fp> elems) : field_(field), elems_(std::move(elems)) {
        require(elems_.size() >= 1, Errc::invalid_argument, "eval set: empty");
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            require(elems_[i] < field_.p(), Errc::invalid_argument, "eval set: element out of field");
            for (std::size_t j = i + 1; j < elems_.size(); ++j)
                require(elems_[i] != elems_[j], Errc::invalid_argument, "eval set: duplicate element");
        }
    }

    /// {0, 1, ..., s-1} inside F_p.
    static EvalSet prefix(PrimeField field, int s) {
        require(s >= 1 && (std::uint32_t)s <= field.p(), Errc::invalid_argument, "eval set: size exceeds field");
        std::vector<Fp> e(s);
        for (int i = 0; i < s; ++i) e[i] = static_cast<Fp>(i);
        return EvalSet(field, std::move(e));
    }

    const PrimeField& field() const { return field_; }
    int size() const { return static_cast<int>(elems_.size()); }
    Fp elem(int i) const { return elems_[i]; }
    const std::vector<Fp>& elems() const { return elems_; }

    bool same(const EvalSet& o) const { return field_.same(o.field_) && elems_ == o.elems_; }

private:
    PrimeField field_;
    std::vector<Fp> elems_;
};

} // namespace gridtest

#endif
